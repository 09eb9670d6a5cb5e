#pragma once

#include "linepack/matrix.hpp"

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace linepack {

/// Every threshold used by the library. One value is threaded from the CLI
/// down to each comparison; nothing downstream hard-codes a cutoff.
struct Tolerances
{
    double eq_abs = 1e-9;       ///< scalar equality
    double neighbor_abs = 1e-8; ///< |<x,y>| against a coherence level
    double hull_abs = 1e-9;     ///< "minimum-norm point is zero", cone residuals
    double rank_rel = 1e-10;    ///< relative eigenvalue cutoff for rank

    /// Throws Precondition unless every field lies in (0, 1e-2).
    void validate() const;
};

/// Eigen-decomposition of a symmetric matrix, eigenvalues descending.
/// Row i of `eigenvectors` is the unit eigenvector for `eigenvalues[i]`,
/// with its first nonzero coordinate positive.
struct SpectralData
{
    std::vector<double> eigenvalues;
    Matrix eigenvectors;
    std::size_t top_multiplicity = 0; ///< count of eigenvalues within eq_abs of the largest

    Vec eigenvector(std::size_t i) const { return eigenvectors.row_vec(i); }
};

/// Cyclic Jacobi. Throws NotSymmetric / NonFinite.
SpectralData sym_eig(const Matrix& s, const Tolerances& tol);

/// Numerical rank: eigenvalues of M^T M above rank_rel times the largest.
std::size_t rank_of(const Matrix& m, const Tolerances& tol);

/// Orthonormal bases of the row space of M and of its orthogonal complement
/// in R^cols, read off the eigenvectors of M^T M (cutoff rank_rel).
struct RowSpaceSplit
{
    Matrix range;      ///< rank x cols
    Matrix complement; ///< (cols - rank) x cols
};

RowSpaceSplit split_row_space(const Matrix& m, const Tolerances& tol);

/// Given r orthonormal rows in R^N, returns an (N - r) x N matrix whose rows
/// complete them to an orthonormal basis. Pivoted Gram-Schmidt against the
/// standard basis, two passes per candidate.
Matrix orthonormal_complement(const Matrix& rows, const Tolerances& tol);

struct ConeFeasible
{
    Vec weights; ///< nonnegative, sum_i w_i u_i ~ target
    double residual = 0.0;
};

struct ConeInfeasible
{
    /// Unit vector r with <r, u_i> <= hull_abs for all generators and
    /// <r, target> > hull_abs.
    Vec certificate;
    double residual = 0.0;
};

using ConeResult = std::variant<ConeFeasible, ConeInfeasible>;

/// Decides whether `target` lies in the closed cone spanned by `generators`
/// (Lawson-Hanson NNLS). Throws DimensionMismatch, IterationLimit.
ConeResult nnls_cone_feasible(std::span<const Vec> generators, std::span<const double> target,
                              const Tolerances& tol);

struct HullPoint
{
    Vec point;
    Vec weights; ///< convex weights reproducing `point`
    double gap = 0.0; ///< ||p||^2 - min_i <p, u_i>, the optimality certificate
    std::size_t iterations = 0;
};

/// Minimum-norm point of conv(points) by Frank-Wolfe with away steps, started
/// at the centroid, with an exact affine solve on the active face.
HullPoint min_norm_point(std::span<const Vec> points, const Tolerances& tol);

/// Minimum-norm least squares solution of A x = b for symmetric A via the
/// eigendecomposition, discarding eigenvalues below rank_rel of the largest.
Vec sym_pseudo_solve(const Matrix& a, std::span<const double> b, const Tolerances& tol);

} // namespace linepack
