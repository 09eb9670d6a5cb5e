#pragma once

#include "linepack/frames.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace linepack {

/// phi_k = (cos(k pi/m), sin(k pi/m)), k = 1..m. Tight with bound m/2,
/// coherence cos(pi/m).
UnitVectorSystem circular_frame(std::size_t m);

/// Six equiangular vectors in R^4 at angle 1/3, the columns of
///   (1/sqrt3) [ 1     1    1    1    1    1
///               sqrt2 -sqrt2 0    0    0    0
///               0     0    sqrt2 -sqrt2 0  0
///               0     0    0    0  sqrt2 -sqrt2 ].
UnitVectorSystem six_in_r4();

/// {e1, e2, (e1+e2)/sqrt2, (e1-e2)/sqrt2}: two mutually unbiased bases of R^2.
UnitVectorSystem mub_r2();

/// n+1 unit vectors in R^n with pairwise inner products -1/n.
UnitVectorSystem simplex_etf(std::size_t n);

struct TightCompletion
{
    double lambda = 0.0;        ///< largest eigenvalue of S
    std::size_t multiplicity = 0;
    std::vector<Vec> added;     ///< sqrt(lambda - lambda_j) e_j, one per sub-maximal eigenvalue
};

/// Vectors whose rank-one terms raise S to lambda_1 * I.
TightCompletion tight_completion(const UnitVectorSystem& x, const Tolerances& tol);

struct NaimarkComplement
{
    UnitVectorSystem system; ///< m unit vectors in R^{m-k}
    double lambda = 0.0;
    std::size_t multiplicity = 0;
    double gram_residual = 0.0;  ///< max_{i != j} |<y_i,y_j>(1-lambda) - <x_i,x_j>|
    double norm_residual = 0.0;  ///< max_i | |y_i| - 1 |
};

/// Embeds the lambda-tight completion as a Parseval frame, completes its
/// synthesis rows to an orthonormal basis, and reads y_i off the
/// complementary block, scaled by 1/sqrt(1 - 1/lambda). Then
/// <y_i, y_j> = <x_i, x_j> / (1 - lambda) for i != j.
/// Throws DegenerateComplement (m = k) and NotScalable (lambda <= 1 + eq_abs).
NaimarkComplement naimark_complement(const UnitVectorSystem& x, const Tolerances& tol);

/// x_i^+ = (x_i, x_i)/sqrt2 and x_i^- = (x_i, -x_i)/sqrt2 in R^{2n}; the
/// plus vectors come first.
UnitVectorSystem double_frame(const UnitVectorSystem& x);

/// Names accepted by `construct`: circular (m), six-in-r4, mub-r2, simplex (n).
UnitVectorSystem construct_by_name(std::string_view name, std::size_t m, std::size_t n);

} // namespace linepack
