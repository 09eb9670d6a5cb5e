#include "linepack/frames.hpp"
#include "linepack/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace linepack {

namespace {

Matrix scaled_identity(std::size_t n, double a)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = a;
    return m;
}

} // namespace

std::string_view to_string(DiagnosticStatus status)
{
    switch (status)
    {
    case DiagnosticStatus::Pass: return "PASS";
    case DiagnosticStatus::Fail: return "FAILED-DIAGNOSTIC";
    case DiagnosticStatus::Skip: return "SKIP";
    case DiagnosticStatus::Ambiguous: return "AMBIGUOUS";
    }
    return "UNKNOWN";
}

std::string_view to_string(TightnessVerdict::Kind kind)
{
    switch (kind)
    {
    case TightnessVerdict::Kind::NotTight: return "NotTight";
    case TightnessVerdict::Kind::Tight: return "Tight";
    case TightnessVerdict::Kind::Parseval: return "Parseval";
    }
    return "Unknown";
}

UnitVectorSystem UnitVectorSystem::create(std::size_t dim, std::vector<Vec> vectors, const Tolerances& tol,
                                          std::vector<std::string> labels)
{
    if (dim == 0)
        throw Error(ErrorCode::ShapeError, "dimension must be at least 1");
    if (vectors.empty())
        throw Error(ErrorCode::ShapeError, "a system needs at least one vector");
    if (!labels.empty() && labels.size() != vectors.size())
        throw Error(ErrorCode::ShapeError, "label count differs from vector count");

    UnitVectorSystem x;
    x.dim_ = dim;
    for (std::size_t i = 0; i < vectors.size(); ++i)
    {
        auto& v = vectors[i];
        if (v.size() != dim)
            throw Error(ErrorCode::ShapeError, "vector " + std::to_string(i) + " has length " + std::to_string(v.size())
                                                   + ", expected " + std::to_string(dim));
        if (!all_finite(v))
            throw Error(ErrorCode::NonFinite, "vector " + std::to_string(i) + " has NaN or Inf entries");
        const double nv = norm(v);
        const double dev = std::abs(nv - 1.0);
        if (dev > kRenormalizeLimit)
        {
            std::ostringstream msg;
            msg << "vector " << i << " has norm " << nv << ", more than 1e-6 from 1";
            throw Error(ErrorCode::NormError, msg.str());
        }
        if (dev > tol.eq_abs)
        {
            std::ostringstream msg;
            msg << "vector " << i << " renormalized (norm deviated by " << dev << ")";
            x.warnings_.push_back(msg.str());
            v = scaled(v, 1.0 / nv);
        }
    }
    x.vectors_ = std::move(vectors);
    x.labels_ = std::move(labels);
    return x;
}

UnitVectorSystem UnitVectorSystem::subset(std::span<const std::size_t> indices) const
{
    if (indices.empty())
        throw Error(ErrorCode::Precondition, "subset must be nonempty");
    UnitVectorSystem out;
    out.dim_ = dim_;
    for (std::size_t i : indices)
    {
        out.vectors_.push_back(vectors_.at(i));
        if (!labels_.empty())
            out.labels_.push_back(labels_[i]);
    }
    return out;
}

UnitVectorSystem UnitVectorSystem::with_replaced(std::size_t i, Vec v) const
{
    if (v.size() != dim_)
        throw Error(ErrorCode::DimensionMismatch, "replacement has wrong dimension");
    if (std::abs(norm(v) - 1.0) > 1e-12)
        throw Error(ErrorCode::Precondition, "replacement must be a unit vector");
    UnitVectorSystem out = *this;
    out.vectors_.at(i) = std::move(v);
    return out;
}

GramMatrix gram(const UnitVectorSystem& x, kernels::Exec exec)
{
    GramMatrix g;
    g.entries = kernels::gram(x.vectors(), exec);
    g.coherence = kernels::max_offdiag_abs(g.entries);
    return g;
}

double coherence(const UnitVectorSystem& x)
{
    return gram(x).coherence;
}

NeighborSet neighbors(const GramMatrix& g, std::size_t i, double level, const Tolerances& tol)
{
    if (i >= g.entries.rows())
        throw Error(ErrorCode::Precondition, "vector index out of range");
    if (level < 0.0 || level > 1.0)
        throw Error(ErrorCode::Precondition, "neighbor level must lie in [0, 1]");
    NeighborSet out;
    out.owner = i;
    out.level = level;
    for (std::size_t j = 0; j < g.entries.cols(); ++j)
    {
        if (j == i)
            continue;
        const double gij = g.entries(i, j);
        if (std::abs(std::abs(gij) - level) <= tol.neighbor_abs)
        {
            out.members.push_back(j);
            out.signs.push_back(gij < 0.0 ? -1 : 1);
        }
    }
    return out;
}

NeighborSet neighbors(const UnitVectorSystem& x, std::size_t i, double level, const Tolerances& tol)
{
    return neighbors(gram(x), i, level, tol);
}

std::vector<std::pair<std::size_t, std::size_t>> near_ties(const GramMatrix& g, double level, const Tolerances& tol)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < g.entries.rows(); ++i)
        for (std::size_t j = i + 1; j < g.entries.cols(); ++j)
        {
            const double gap = std::abs(std::abs(g.entries(i, j)) - level);
            if (gap > tol.neighbor_abs && gap <= 2.0 * tol.neighbor_abs)
                out.emplace_back(i, j);
        }
    return out;
}

Matrix frame_operator(const UnitVectorSystem& x, kernels::Exec exec)
{
    return kernels::frame_operator(x.vectors(), x.dim(), exec);
}

SpectralData spectrum(const UnitVectorSystem& x, const Tolerances& tol)
{
    return sym_eig(frame_operator(x), tol);
}

bool spans(const UnitVectorSystem& x, std::span<const std::size_t> omit, const Tolerances& tol)
{
    std::vector<Vec> kept;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::find(omit.begin(), omit.end(), i) == omit.end())
            kept.push_back(x[i]);
    if (kept.empty())
        throw Error(ErrorCode::Precondition, "omission leaves no vectors");
    return rank_of(Matrix::from_rows(kept, x.dim()), tol) == x.dim();
}

TightnessVerdict tightness(const UnitVectorSystem& x, const Tolerances& tol)
{
    TightnessVerdict out;
    out.bound = static_cast<double>(x.size()) / static_cast<double>(x.dim());
    const Matrix s = frame_operator(x);
    out.deviation = (s - scaled_identity(x.dim(), out.bound)).max_abs();
    if (out.deviation <= tol.eq_abs)
        out.kind = std::abs(out.bound - 1.0) <= tol.eq_abs ? TightnessVerdict::Kind::Parseval
                                                           : TightnessVerdict::Kind::Tight;
    return out;
}

Equiangularity equiangularity(const UnitVectorSystem& x, const Tolerances& tol)
{
    Equiangularity out;
    if (x.size() < 2)
    {
        out.equiangular = true;
        return out;
    }
    const auto g = gram(x);
    double lo = 1.0, hi = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
        {
            const double a = std::abs(g.entries(i, j));
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        }
    out.spread = hi - lo;
    out.equiangular = out.spread <= tol.neighbor_abs;
    out.angle = hi;
    out.near_threshold = out.spread > 0.5 * tol.neighbor_abs && out.spread <= 2.0 * tol.neighbor_abs;
    return out;
}

EtfVerdict is_etf(const UnitVectorSystem& x, const Tolerances& tol)
{
    EtfVerdict out;
    out.tight = tightness(x, tol).tight();
    const auto eq = equiangularity(x, tol);
    out.equiangular = eq.equiangular;
    out.etf = out.tight && out.equiangular;
    const std::size_t m = x.size(), n = x.dim();
    if (m >= n)
    {
        out.welch_gap = coherence(x) - welch_bound(m, n);
        const bool attains = std::abs(*out.welch_gap) <= kWelchEqualityTol;
        if (attains != out.etf)
        {
            std::ostringstream msg;
            msg << "tight+equiangular says " << (out.etf ? "ETF" : "not ETF") << " but coherence - welch = "
                << *out.welch_gap;
            throw Error(ErrorCode::InconsistentVerdict, msg.str());
        }
    }
    return out;
}

double welch_bound(std::size_t m, std::size_t n)
{
    if (m < n || m < 2)
        return 0.0;
    const double md = static_cast<double>(m), nd = static_cast<double>(n);
    return std::sqrt((md - nd) / (nd * (md - 1.0)));
}

double orthoplex_bound(std::size_t n)
{
    return 1.0 / std::sqrt(static_cast<double>(n));
}

std::size_t gerzon_max(std::size_t n)
{
    return n * (n + 1) / 2;
}

BoundsCard bounds_card(const UnitVectorSystem& x, const Tolerances& tol)
{
    BoundsCard card;
    card.m = x.size();
    card.n = x.dim();
    card.coherence = coherence(x);
    card.orthoplex = orthoplex_bound(card.n);
    card.gerzon_max_m = gerzon_max(card.n);
    card.exceeds_gerzon = card.m > card.gerzon_max_m;
    if (card.m > card.n)
    {
        card.welch = welch_bound(card.m, card.n);
        card.meets_welch = std::abs(card.coherence - *card.welch) <= kWelchEqualityTol;
        card.welch_respected = card.coherence >= *card.welch - tol.eq_abs;
    }
    return card;
}

Vec reconstruct(const UnitVectorSystem& x, std::span<const double> target, const Tolerances& tol)
{
    if (target.size() != x.dim())
        throw Error(ErrorCode::DimensionMismatch, "target dimension differs from the system");
    if (!spans(x, tol))
        throw Error(ErrorCode::NotAFrame, "system does not span R^n");

    const auto spec = spectrum(x, tol);
    // S^{-1} applied through the spectral decomposition.
    auto apply_inverse = [&](std::span<const double> v) {
        Vec out(x.dim(), 0.0);
        for (std::size_t k = 0; k < x.dim(); ++k)
        {
            const auto ek = spec.eigenvectors.row(k);
            axpy(dot(ek, v) / spec.eigenvalues[k], ek, out);
        }
        return out;
    };

    Vec general(x.dim(), 0.0);
    Vec tight_route(x.dim(), 0.0);
    for (const auto& xi : x.vectors())
    {
        const double c = dot(target, xi);
        axpy(c, apply_inverse(xi), general);
        axpy(c, xi, tight_route);
    }

    const double scale = std::max(1.0, norm(target));
    if (norm(difference(general, target)) > 1e-7 * scale)
        throw Error(ErrorCode::InconsistentVerdict, "reconstruction does not reproduce the target");
    const auto t = tightness(x, tol);
    if (t.tight())
    {
        tight_route = scaled(tight_route, 1.0 / t.bound);
        if (norm(difference(general, tight_route)) > 1e-7 * scale)
            throw Error(ErrorCode::InconsistentVerdict, "tight and general reconstruction routes disagree");
    }
    return general;
}

NeighborCountReport neighbor_count_report(const UnitVectorSystem& x, const Tolerances& tol)
{
    NeighborCountReport out;
    const auto g = gram(x);
    out.level = g.coherence;
    for (std::size_t i = 0; i < x.size(); ++i)
        out.counts.push_back(neighbors(g, i, g.coherence, tol).members.size());

    const std::size_t m = x.size();
    const auto etf = is_etf(x, tol);
    if (!etf.tight)
    {
        out.status = DiagnosticStatus::Skip;
        out.message = "not tight; count bounds apply to tight frames only";
        return out;
    }
    if (etf.etf)
    {
        out.status = DiagnosticStatus::Skip;
        out.message = "ETF; count bounds apply to non-ETF frames only";
        return out;
    }
    const bool all_le = std::all_of(out.counts.begin(), out.counts.end(), [&](std::size_t c) { return c + 2 <= m; });
    const bool some_le3 = std::any_of(out.counts.begin(), out.counts.end(), [&](std::size_t c) { return c + 3 <= m; });
    if (!all_le)
    {
        out.status = DiagnosticStatus::Fail;
        out.message = "some count exceeds m-2: input is not a tight Grassmannian frame or tolerances are off";
    }
    else if (m % 2 == 1 && !some_le3)
    {
        out.status = DiagnosticStatus::Fail;
        out.message = "m odd but no count <= m-3: input is not a tight Grassmannian frame or tolerances are off";
    }
    else
    {
        out.status = DiagnosticStatus::Pass;
        out.message = m % 2 == 1 ? "all counts <= m-2 and some count <= m-3" : "all counts <= m-2";
    }
    return out;
}

DropOneReport drop_one_spanning(const UnitVectorSystem& x, const Tolerances& tol)
{
    DropOneReport out;
    if (x.size() <= x.dim())
    {
        out.message = "applies to m > n only";
        return out;
    }
    for (std::size_t j = 0; j < x.size(); ++j)
    {
        const std::size_t omit[] = {j};
        if (!spans(x, omit, tol))
            out.failing.push_back(j);
    }
    if (out.failing.empty())
    {
        out.status = DiagnosticStatus::Pass;
        out.message = "every drop-one subsystem spans R^n";
    }
    else
    {
        out.status = DiagnosticStatus::Fail;
        out.message = "evidence input is not Grassmannian: some drop-one subsystem fails to span";
    }
    return out;
}

} // namespace linepack
