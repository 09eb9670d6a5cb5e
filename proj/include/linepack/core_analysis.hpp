#pragma once

#include "linepack/frames.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Per-vector classification at the coherence level and the core iteration.
//
// A vector x with packing neighbors y (|<x,y>| = coh) and signs s_y is
// isolable iff some unit w orthogonal to x has <w, s_y y> <= 0 for every
// neighbor; then (x + eps w)/|x + eps w| beats the coherence for small eps.
// It is not isolable iff the projections of s_y y onto x^perp positively span
// x^perp. Every isolable verdict is confirmed by actually building the
// perturbed vector.
namespace linepack {

enum class VectorStatus
{
    Isolated,
    DeficientIsolable,
    Isolable,
    NotIsolable,
    Indeterminate,
};

std::string_view to_string(VectorStatus status);

inline bool is_isolable(VectorStatus s)
{
    return s == VectorStatus::Isolated || s == VectorStatus::DeficientIsolable || s == VectorStatus::Isolable;
}

/// Evidence that the projected signed neighbors positively span x^perp:
/// convex weights giving zero, and a nonnegative combination for each of the
/// targets +-b_j over an orthonormal basis of x^perp.
struct PositiveSpanCertificate
{
    Vec hull_weights;
    std::vector<Vec> targets;
    std::vector<Vec> cone_weights;
};

struct VectorVerdict
{
    std::size_t index = 0;
    VectorStatus status = VectorStatus::Indeterminate;
    double coherence = 0.0;
    std::size_t neighbor_count = 0;
    std::size_t neighbor_span_rank = 0;
    double hull_norm = 0.0;  ///< norm of the min-norm point of the projected neighbors
    std::string stage;       ///< which branch decided the verdict
    std::optional<Vec> witness;
    std::optional<Vec> replacement; ///< validated perturbed vector for isolable statuses
    std::optional<PositiveSpanCertificate> certificate;
    std::vector<std::string> warnings;
};

/// Outcome of the separation test on projected signed neighbors.
struct Separation
{
    bool separable = false;
    Vec witness; ///< unit, orthogonal to x, <w, u_y> <= hull_abs for all y
    double hull_norm = 0.0;
    std::string stage;
    std::optional<PositiveSpanCertificate> certificate;
};

/// Decides whether some unit w orthogonal to `x` has <w, v> <= 0 for every
/// v in `signed_neighbors` (after projection to x^perp). Stage one is the
/// min-norm point of the projected hull; when that is zero, stage two tests
/// the targets +-b_j with NNLS. Throws IterationLimit.
Separation separate(std::span<const double> x, std::span<const Vec> signed_neighbors, const Tolerances& tol);

/// (x + eps w)/|x + eps w|.
Vec perturb_at(std::span<const double> x, std::span<const double> w, double eps);

/// Margin by which a replacement must beat the coherence alpha.
inline double replacement_margin(double alpha)
{
    return std::max(1e-12, 1e-6 * alpha);
}

/// Replaces x_i by (x_i + eps w)/|x_i + eps w|, halving eps from
/// min(0.5, (alpha - delta)/2) until every |<x', y>| (y != x_i) is below
/// coh(X) - margin. `eps_cap`, when positive, further bounds the start.
/// Throws Precondition (w not a unit vector orthogonal to x_i, or coh = 0)
/// and SearchFailed (60 halvings without success).
Vec perturb_replace(const UnitVectorSystem& x, std::size_t i, std::span<const double> w, const Tolerances& tol,
                    double eps_cap = 0.0);

/// Variant against an explicit coherence level (used when other vectors have
/// already been replaced and the system's own coherence has moved).
Vec perturb_replace_at(const UnitVectorSystem& x, std::size_t i, std::span<const double> w, double alpha,
                       const Tolerances& tol, double eps_cap = 0.0);

VectorVerdict classify_vector(const UnitVectorSystem& x, std::size_t i, const Tolerances& tol);
VectorVerdict classify_vector(const UnitVectorSystem& x, const GramMatrix& g, std::size_t i, const Tolerances& tol);

/// Verdicts for every vector. Each index is independent; the parallel
/// version distributes indices over threads and matches the serial one.
std::vector<VectorVerdict> classify_all_serial(const UnitVectorSystem& x, const Tolerances& tol);
std::vector<VectorVerdict> classify_all_parallel(const UnitVectorSystem& x, const Tolerances& tol);
std::vector<VectorVerdict> classify_all(const UnitVectorSystem& x, const Tolerances& tol,
                                        kernels::Exec exec = kernels::Exec::Parallel);

struct IsolableSet
{
    IndexSet isolable;      ///< Isolated, DeficientIsolable or Isolable
    IndexSet indeterminate; ///< excluded from `isolable`
    std::vector<VectorVerdict> verdicts;
    std::vector<std::string> warnings;
};

IsolableSet isolable_set(const UnitVectorSystem& x, const Tolerances& tol);

struct Replacement
{
    UnitVectorSystem system;
    IndexSet replaced;
    IsolableSet analysis;
    double coherence_after = 0.0;
    double coherence_rest = 0.0; ///< coh(X \ I(X))
    DiagnosticStatus coherence_check = DiagnosticStatus::Skip;
    std::vector<std::string> warnings;
};

/// Replaces every isolable vector in ascending index order. Each replaced
/// vector ends strictly below coh(X) against every other vector of X'.
Replacement replace_all_isolable(const UnitVectorSystem& x, const Tolerances& tol);

struct CoreLevel
{
    IndexSet members;  ///< Y_k, indices into the input
    IndexSet isolable; ///< I(Y_k)
    IndexSet indeterminate;
    double coherence = 0.0;
};

struct CoreTrace
{
    double input_coherence = 0.0;
    IndexSet initial_isolable; ///< I(X)
    IndexSet initial_indeterminate;
    std::vector<CoreLevel> levels; ///< Y_1, Y_2, ... up to the fixed point
    IndexSet core;
    std::vector<std::string> warnings;
};

inline constexpr std::string_view kNotGrassmannianEvidence = "NotGrassmannianEvidence";

/// Y_1 = X \ I(X), Y_{k+1} = Y_k \ I(Y_k) until I(Y_k) is empty. Coherence
/// is recomputed per level. Indeterminate vectors are kept.
CoreTrace core(const UnitVectorSystem& x, const Tolerances& tol);

struct CoreValidation
{
    DiagnosticStatus status = DiagnosticStatus::Skip;
    DiagnosticStatus size_check = DiagnosticStatus::Skip;
    DiagnosticStatus span_check = DiagnosticStatus::Skip;
    std::vector<std::size_t> neighbor_ranks; ///< per core member, rank of its neighbors within the core
    std::string message;
};

/// Size >= n+1 and neighbor spanning for each core vector. A failure is
/// evidence that the input is not Grassmannian, never an exception.
CoreValidation validate_core(const UnitVectorSystem& x, const CoreTrace& trace, const Tolerances& tol);

struct DichotomyVerdict
{
    enum class Kind
    {
        EquiangularSubset,
        FullCore,
        Inapplicable,
        Undetermined,
    };
    Kind kind = Kind::Inapplicable;
    IndexSet indices;
    std::optional<CoreTrace> trace;
    std::vector<std::string> warnings;
};

std::string_view to_string(DichotomyVerdict::Kind kind);

/// For m = n + 2: either the core is everything, or it is n+1 equiangular
/// vectors.
DichotomyVerdict classify_n_plus_2(const UnitVectorSystem& x, const Tolerances& tol);

struct DiagnosticReport
{
    DiagnosticStatus status = DiagnosticStatus::Skip;
    std::string message;
};

/// m = n+2, n > 2, tight, and presumed Grassmannian is a contradiction.
DiagnosticReport tight_grassmannian_diagnostic(const UnitVectorSystem& x, bool presumed_grassmannian,
                                               const Tolerances& tol);

struct EigenSpanReport
{
    DiagnosticStatus status = DiagnosticStatus::Skip;
    std::size_t top_multiplicity = 0;
    /// distances[k][i]: distance from the k-th top eigenvector to span F_{x_i}
    std::vector<std::vector<double>> distances;
    std::string message;
};

inline constexpr double kEigenSpanTol = 1e-7;

/// Distance from the top eigenvector of S to span({x} + neighbors of x).
EigenSpanReport eigen_span_diagnostic(const UnitVectorSystem& x, const Tolerances& tol);

} // namespace linepack
