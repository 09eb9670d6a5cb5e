#pragma once

#include "linepack/kernels.hpp"
#include "linepack/matrix.hpp"
#include "linepack/numerics.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace linepack {

using IndexSet = std::vector<std::size_t>;

enum class DiagnosticStatus
{
    Pass,
    Fail,
    Skip,
    Ambiguous,
};

std::string_view to_string(DiagnosticStatus status);

/// m unit vectors in R^n, validated on construction.
///
/// Vectors whose norm is off by more than eq_abs but at most 1e-6 are
/// renormalized and a warning is recorded; anything farther off is a
/// NormError. Once built the system is immutable.
class UnitVectorSystem
{
public:
    static constexpr double kRenormalizeLimit = 1e-6;

    static UnitVectorSystem create(std::size_t dim, std::vector<Vec> vectors, const Tolerances& tol = {},
                                   std::vector<std::string> labels = {});

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return vectors_.size(); }
    const Vec& operator[](std::size_t i) const { return vectors_.at(i); }
    std::span<const Vec> vectors() const noexcept { return vectors_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    /// Sub-system on the given indices, in the given order. Nonempty.
    UnitVectorSystem subset(std::span<const std::size_t> indices) const;
    /// Copy with vector i replaced by a unit vector.
    UnitVectorSystem with_replaced(std::size_t i, Vec v) const;

    /// Synthesis rows: row i is x_i.
    Matrix as_rows() const { return Matrix::from_rows(vectors_, dim_); }

private:
    UnitVectorSystem() = default;

    std::size_t dim_ = 0;
    std::vector<Vec> vectors_;
    std::vector<std::string> labels_;
    std::vector<std::string> warnings_;
};

struct GramMatrix
{
    Matrix entries;
    double coherence = 0.0; ///< max_{i != j} |G_ij|, zero for a single vector
};

GramMatrix gram(const UnitVectorSystem& x, kernels::Exec exec = kernels::Exec::Parallel);
double coherence(const UnitVectorSystem& x);

struct NeighborSet
{
    std::size_t owner = 0;
    double level = 0.0;
    IndexSet members;
    std::vector<int> signs; ///< sign of G_owner,j for each member
};

/// Indices j != i with ||G_ij| - level| <= neighbor_abs.
NeighborSet neighbors(const GramMatrix& g, std::size_t i, double level, const Tolerances& tol);
NeighborSet neighbors(const UnitVectorSystem& x, std::size_t i, double level, const Tolerances& tol);

/// Pairs (i < j) whose |G_ij| is outside neighbor_abs of `level` but within
/// 2 * neighbor_abs: classification there depends on the tolerance.
std::vector<std::pair<std::size_t, std::size_t>> near_ties(const GramMatrix& g, double level, const Tolerances& tol);

Matrix frame_operator(const UnitVectorSystem& x, kernels::Exec exec = kernels::Exec::Parallel);
SpectralData spectrum(const UnitVectorSystem& x, const Tolerances& tol);

/// True iff the vectors outside `omit` span R^n.
bool spans(const UnitVectorSystem& x, std::span<const std::size_t> omit, const Tolerances& tol);
inline bool spans(const UnitVectorSystem& x, const Tolerances& tol)
{
    return spans(x, {}, tol);
}

struct TightnessVerdict
{
    enum class Kind
    {
        NotTight,
        Tight,
        Parseval,
    };
    Kind kind = Kind::NotTight;
    double bound = 0.0;     ///< m/n, the only possible tight bound for unit norms
    double deviation = 0.0; ///< max |S - (m/n) I|

    bool tight() const { return kind != Kind::NotTight; }
};

std::string_view to_string(TightnessVerdict::Kind kind);

TightnessVerdict tightness(const UnitVectorSystem& x, const Tolerances& tol);

struct Equiangularity
{
    bool equiangular = false;
    double angle = 0.0;  ///< common |<x_i, x_j>| when equiangular, else the coherence
    double spread = 0.0; ///< max minus min off-diagonal |G_ij|
    bool near_threshold = false; ///< spread within a factor 2 of neighbor_abs either way
};

Equiangularity equiangularity(const UnitVectorSystem& x, const Tolerances& tol);

struct EtfVerdict
{
    bool etf = false;
    bool tight = false;
    bool equiangular = false;
    std::optional<double> welch_gap; ///< coherence - welch, when m >= n
};

/// Tight and equiangular, cross-checked against Welch equality. Throws
/// InconsistentVerdict when the two routes disagree.
EtfVerdict is_etf(const UnitVectorSystem& x, const Tolerances& tol);

inline constexpr double kWelchEqualityTol = 1e-7;

/// sqrt((m - n) / (n (m - 1))), defined for m > n (and 0 at m = n).
double welch_bound(std::size_t m, std::size_t n);
double orthoplex_bound(std::size_t n);
std::size_t gerzon_max(std::size_t n);

struct BoundsCard
{
    std::size_t m = 0;
    std::size_t n = 0;
    double coherence = 0.0;
    std::optional<double> welch; ///< empty when m <= n
    double orthoplex = 0.0;
    std::size_t gerzon_max_m = 0;
    bool meets_welch = false;     ///< |coherence - welch| <= 1e-7
    bool exceeds_gerzon = false;  ///< m > n(n+1)/2, so no ETF and the orthoplex bound applies
    bool welch_respected = true;  ///< coherence >= welch - eq_abs
};

BoundsCard bounds_card(const UnitVectorSystem& x, const Tolerances& tol);

/// sum_i <t, x_i> S^{-1} x_i. Throws NotAFrame when X does not span.
Vec reconstruct(const UnitVectorSystem& x, std::span<const double> target, const Tolerances& tol);

struct NeighborCountReport
{
    double level = 0.0;
    std::vector<std::size_t> counts;
    DiagnosticStatus status = DiagnosticStatus::Skip;
    std::string message;
};

/// Neighbor counts at the coherence level, with the parity/count bounds
/// that hold for tight Grassmannian frames that are not ETFs.
NeighborCountReport neighbor_count_report(const UnitVectorSystem& x, const Tolerances& tol);

struct DropOneReport
{
    DiagnosticStatus status = DiagnosticStatus::Skip;
    IndexSet failing; ///< j such that X without x_j does not span
    std::string message;
};

/// Whether every drop-one subsystem still spans (true of Grassmannian
/// frames with m > n).
DropOneReport drop_one_spanning(const UnitVectorSystem& x, const Tolerances& tol);

} // namespace linepack
