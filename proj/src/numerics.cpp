#include "linepack/numerics.hpp"
#include "linepack/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace linepack {

void Tolerances::validate() const
{
    for (double t : {eq_abs, neighbor_abs, hull_abs, rank_rel})
    {
        if (!(t > 0.0 && t < 1e-2))
            throw Error(ErrorCode::Precondition, "tolerances must lie in (0, 1e-2)");
    }
}

namespace {

constexpr int kMaxSweeps = 100;

void canonical_sign(std::span<double> v)
{
    for (double x : v)
    {
        if (std::abs(x) > 1e-12)
        {
            if (x < 0.0)
                for (auto& y : v)
                    y = -y;
            return;
        }
    }
}

} // namespace

SpectralData sym_eig(const Matrix& s, const Tolerances& tol)
{
    if (s.rows() != s.cols())
        throw Error(ErrorCode::NotSymmetric, "matrix is not square");
    if (!s.finite())
        throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
    const std::size_t n = s.rows();
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
        {
            if (std::abs(s(i, j) - s(j, i)) > tol.eq_abs)
                throw Error(ErrorCode::NotSymmetric, "max |S_ij - S_ji| exceeds eq_abs");
            a(i, j) = 0.5 * (s(i, j) + s(j, i));
        }

    Matrix v = Matrix::identity(n);
    const double scale = a.frobenius();
    for (int sweep = 0; sweep < kMaxSweeps && scale > 0.0; ++sweep)
    {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += a(p, q) * a(p, q);
        if (std::sqrt(off) <= 1e-16 * scale)
            break;

        for (std::size_t p = 0; p < n; ++p)
        {
            for (std::size_t q = p + 1; q < n; ++q)
            {
                const double apq = a(p, q);
                if (apq == 0.0)
                    continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k)
                {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k)
                {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k)
                {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    SpectralData out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n, n);
    for (std::size_t r = 0; r < n; ++r)
    {
        out.eigenvalues[r] = a(order[r], order[r]);
        for (std::size_t k = 0; k < n; ++k)
            out.eigenvectors(r, k) = v(k, order[r]);
        canonical_sign(out.eigenvectors.row(r));
    }
    out.top_multiplicity = 0;
    for (double lam : out.eigenvalues)
        if (n > 0 && std::abs(lam - out.eigenvalues.front()) <= tol.eq_abs)
            ++out.top_multiplicity;
    return out;
}

std::size_t rank_of(const Matrix& m, const Tolerances& tol)
{
    if (!m.finite())
        throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
    if (m.empty())
        return 0;
    // M^T M and M M^T share their nonzero spectrum; take the smaller one.
    const Matrix g = m.cols() <= m.rows() ? m.transpose() * m : m * m.transpose();
    const auto spec = sym_eig(g, Tolerances{.eq_abs = std::max(tol.eq_abs, 1e-12 * g.max_abs()),
                                            .neighbor_abs = tol.neighbor_abs,
                                            .hull_abs = tol.hull_abs,
                                            .rank_rel = tol.rank_rel});
    const double top = spec.eigenvalues.front();
    if (!(top > 0.0))
        return 0;
    return static_cast<std::size_t>(std::count_if(spec.eigenvalues.begin(), spec.eigenvalues.end(),
                                                  [&](double lam) { return lam > tol.rank_rel * top; }));
}

RowSpaceSplit split_row_space(const Matrix& m, const Tolerances& tol)
{
    if (!m.finite())
        throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
    const std::size_t n = m.cols();
    const Matrix g = m.transpose() * m;
    Tolerances inner = tol;
    inner.eq_abs = std::max(tol.eq_abs, 1e-12 * g.max_abs());
    const auto spec = sym_eig(g, inner);
    const double top = n > 0 ? spec.eigenvalues.front() : 0.0;
    std::size_t rank = 0;
    if (top > 0.0)
        while (rank < n && spec.eigenvalues[rank] > tol.rank_rel * top)
            ++rank;
    RowSpaceSplit out{Matrix(rank, n), Matrix(n - rank, n)};
    for (std::size_t r = 0; r < n; ++r)
    {
        const auto src = spec.eigenvectors.row(r);
        auto dst = r < rank ? out.range.row(r) : out.complement.row(r - rank);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return out;
}

Matrix orthonormal_complement(const Matrix& rows, const Tolerances& tol)
{
    const std::size_t r = rows.rows();
    const std::size_t n = rows.cols();
    if (r > n)
        throw Error(ErrorCode::NotOrthonormal, "more rows than columns");
    if (!rows.finite())
        throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j)
        {
            const double expect = i == j ? 1.0 : 0.0;
            if (std::abs(dot(rows.row(i), rows.row(j)) - expect) > tol.eq_abs)
                throw Error(ErrorCode::NotOrthonormal, "input rows are not orthonormal within eq_abs");
        }

    std::vector<Vec> basis;
    basis.reserve(n);
    for (std::size_t i = 0; i < r; ++i)
        basis.push_back(rows.row_vec(i));

    auto residual_of = [&](std::size_t j) {
        Vec e(n, 0.0);
        e[j] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis)
                axpy(-dot(b, e), b, e);
        return e;
    };

    Matrix out(n - r, n);
    for (std::size_t added = 0; added < n - r; ++added)
    {
        Vec best;
        double best_norm = -1.0;
        for (std::size_t j = 0; j < n; ++j)
        {
            Vec e = residual_of(j);
            const double nr = norm(e);
            if (nr > best_norm)
            {
                best_norm = nr;
                best = std::move(e);
            }
        }
        // Some standard basis vector keeps at least 1/sqrt(n) outside any
        // proper subspace, so best_norm is bounded away from zero.
        Vec q = scaled(best, 1.0 / best_norm);
        for (const auto& b : basis)
            axpy(-dot(b, q), b, q);
        q = normalized(q);
        std::copy(q.begin(), q.end(), out.row(added).begin());
        basis.push_back(std::move(q));
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
        {
            const double expect = i == j ? 1.0 : 0.0;
            if (std::abs(dot(basis[i], basis[j]) - expect) > 1e-8)
                throw Error(ErrorCode::NotOrthonormal, "completed basis failed the G G^T = I check");
        }
    return out;
}

Vec sym_pseudo_solve(const Matrix& a, std::span<const double> b, const Tolerances& tol)
{
    const auto spec = sym_eig(a, tol);
    double top = 0.0;
    for (double lam : spec.eigenvalues)
        top = std::max(top, std::abs(lam));
    Vec x(a.cols(), 0.0);
    if (top == 0.0)
        return x;
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i)
    {
        const double lam = spec.eigenvalues[i];
        if (std::abs(lam) <= tol.rank_rel * top)
            continue;
        const auto vi = spec.eigenvectors.row(i);
        axpy(dot(vi, b) / lam, vi, x);
    }
    return x;
}

namespace {

std::size_t common_dim(std::span<const Vec> vs)
{
    if (vs.empty())
        throw Error(ErrorCode::Precondition, "empty vector list");
    const std::size_t d = vs.front().size();
    for (const auto& v : vs)
    {
        if (v.size() != d)
            throw Error(ErrorCode::DimensionMismatch, "vectors of different dimensions");
        if (!all_finite(v))
            throw Error(ErrorCode::NonFinite, "vector has NaN or Inf entries");
    }
    return d;
}

// Least squares over the columns listed in `passive`; returns coefficients
// aligned with `passive`.
Vec passive_least_squares(std::span<const Vec> gens, const std::vector<std::size_t>& passive,
                          std::span<const double> target, const Tolerances& tol)
{
    const std::size_t p = passive.size();
    Matrix normal(p, p);
    Vec rhs(p);
    for (std::size_t i = 0; i < p; ++i)
    {
        rhs[i] = dot(gens[passive[i]], target);
        for (std::size_t j = i; j < p; ++j)
            normal(i, j) = normal(j, i) = dot(gens[passive[i]], gens[passive[j]]);
    }
    Tolerances inner = tol;
    inner.eq_abs = std::max(tol.eq_abs, 1e-12 * normal.max_abs());
    inner.rank_rel = 1e-13;
    return sym_pseudo_solve(normal, rhs, inner);
}

} // namespace

ConeResult nnls_cone_feasible(std::span<const Vec> generators, std::span<const double> target,
                              const Tolerances& tol)
{
    const std::size_t d = common_dim(generators);
    if (target.size() != d)
        throw Error(ErrorCode::DimensionMismatch, "target dimension differs from generators");
    if (!all_finite(target))
        throw Error(ErrorCode::NonFinite, "target has NaN or Inf entries");

    const std::size_t g = generators.size();
    double gen_scale = 0.0;
    for (const auto& u : generators)
        gen_scale = std::max(gen_scale, norm(u));
    const double w_tol = 1e-13 * std::max(1.0, gen_scale) * std::max(1.0, norm(target));

    Vec x(g, 0.0);
    std::vector<bool> in_passive(g, false);
    std::vector<bool> excluded(g, false);

    auto residual = [&] {
        Vec r(target.begin(), target.end());
        for (std::size_t j = 0; j < g; ++j)
            if (x[j] != 0.0)
                axpy(-x[j], generators[j], r);
        return r;
    };

    const std::size_t budget = 100 * g;
    std::size_t steps = 0;
    for (;;)
    {
        const Vec r = residual();
        std::size_t best = g;
        double best_w = w_tol;
        for (std::size_t j = 0; j < g; ++j)
        {
            if (in_passive[j] || excluded[j])
                continue;
            const double w = dot(generators[j], r);
            if (w > best_w)
            {
                best_w = w;
                best = j;
            }
        }
        if (best == g)
            break;
        in_passive[best] = true;

        bool first_inner = true;
        for (;;)
        {
            if (++steps > budget)
                throw Error(ErrorCode::IterationLimit, "NNLS exceeded 100 x generators iterations");
            std::vector<std::size_t> passive;
            for (std::size_t j = 0; j < g; ++j)
                if (in_passive[j])
                    passive.push_back(j);
            const Vec s = passive_least_squares(generators, passive, target, tol);

            bool all_positive = true;
            for (std::size_t k = 0; k < passive.size(); ++k)
                all_positive = all_positive && s[k] > 0.0;
            if (all_positive)
            {
                std::fill(x.begin(), x.end(), 0.0);
                for (std::size_t k = 0; k < passive.size(); ++k)
                    x[passive[k]] = s[k];
                std::fill(excluded.begin(), excluded.end(), false);
                break;
            }
            if (first_inner)
            {
                // Rounding made the entering column useless; skip it until
                // the iterate moves.
                const auto it = std::find(passive.begin(), passive.end(), best);
                if (it != passive.end() && s[static_cast<std::size_t>(it - passive.begin())] <= 0.0)
                {
                    in_passive[best] = false;
                    excluded[best] = true;
                    break;
                }
            }
            first_inner = false;

            double step = 1.0;
            for (std::size_t k = 0; k < passive.size(); ++k)
            {
                const std::size_t j = passive[k];
                if (s[k] <= 0.0)
                    step = std::min(step, x[j] / (x[j] - s[k]));
            }
            for (std::size_t k = 0; k < passive.size(); ++k)
            {
                const std::size_t j = passive[k];
                x[j] += step * (s[k] - x[j]);
                if (x[j] <= 1e-15 * std::max(1.0, std::abs(s[k])))
                {
                    x[j] = 0.0;
                    in_passive[j] = false;
                }
            }
            std::fill(excluded.begin(), excluded.end(), false);
        }
    }

    const Vec r = residual();
    const double rn = norm(r);
    if (rn <= tol.hull_abs)
        return ConeFeasible{x, rn};

    Vec cert = scaled(r, 1.0 / rn);
    for (const auto& u : generators)
        if (dot(cert, u) > tol.hull_abs)
            throw Error(ErrorCode::IterationLimit, "NNLS residual does not certify infeasibility");
    if (!(dot(cert, target) > tol.hull_abs))
        throw Error(ErrorCode::IterationLimit, "NNLS residual does not certify infeasibility");
    return ConeInfeasible{std::move(cert), rn};
}

namespace {

Vec combine(std::span<const Vec> pts, std::span<const double> w, std::size_t d)
{
    Vec p(d, 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (w[i] != 0.0)
            axpy(w[i], pts[i], p);
    return p;
}

// Wolfe's minor cycle: move toward the affine minimizer of the current
// support, dropping points whose weight reaches zero, until the affine
// minimizer is a convex combination.
void polish_support(std::span<const Vec> pts, Vec& w, const Tolerances& tol)
{
    for (std::size_t guard = 0; guard <= pts.size(); ++guard)
    {
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] > 0.0)
                support.push_back(i);
        const std::size_t s = support.size();
        if (s <= 1)
            return;

        Matrix kkt(s + 1, s + 1);
        Vec rhs(s + 1, 0.0);
        rhs[s] = 1.0;
        for (std::size_t i = 0; i < s; ++i)
        {
            for (std::size_t j = i; j < s; ++j)
                kkt(i, j) = kkt(j, i) = dot(pts[support[i]], pts[support[j]]);
            kkt(i, s) = kkt(s, i) = 1.0;
        }
        Tolerances inner = tol;
        inner.eq_abs = std::max(tol.eq_abs, 1e-12 * kkt.max_abs());
        inner.rank_rel = 1e-12;
        Vec mu = sym_pseudo_solve(kkt, rhs, inner);
        mu.resize(s);
        const double total = std::accumulate(mu.begin(), mu.end(), 0.0);
        if (!(std::abs(total - 1.0) < 1e-8))
            return;

        double theta = 1.0;
        for (std::size_t k = 0; k < s; ++k)
            if (mu[k] < 0.0)
                theta = std::min(theta, w[support[k]] / (w[support[k]] - mu[k]));
        for (std::size_t k = 0; k < s; ++k)
        {
            double& wk = w[support[k]];
            wk += theta * (mu[k] - wk);
            if (wk < 1e-16)
                wk = 0.0;
        }
        const double sum = std::accumulate(w.begin(), w.end(), 0.0);
        for (auto& wk : w)
            wk /= sum;
        if (theta == 1.0)
            return;
    }
}

} // namespace

HullPoint min_norm_point(std::span<const Vec> points, const Tolerances& tol)
{
    const std::size_t d = common_dim(points);
    const std::size_t g = points.size();

    double scale = 0.0;
    for (const auto& u : points)
        scale = std::max(scale, dot(u, u));

    HullPoint out;
    out.weights.assign(g, 1.0 / static_cast<double>(g));
    if (scale == 0.0)
    {
        out.point.assign(d, 0.0);
        return out;
    }
    const double stop_gap = 1e-15 * scale;
    constexpr std::size_t kMaxIter = 10000;
    constexpr std::size_t kPolishEvery = 5;

    Vec& w = out.weights;
    Vec p = combine(points, w, d);

    auto current_gap = [&](const Vec& pt) {
        const double pp = dot(pt, pt);
        double lo = std::numeric_limits<double>::infinity();
        for (const auto& u : points)
            lo = std::min(lo, dot(pt, u));
        return pp - lo;
    };

    std::size_t it = 0;
    double gap = current_gap(p);
    for (; it < kMaxIter && gap > stop_gap; ++it)
    {
        const double pp = dot(p, p);
        std::size_t fw = 0, away = g;
        double fw_val = std::numeric_limits<double>::infinity();
        double away_val = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < g; ++i)
        {
            const double gi = dot(p, points[i]);
            if (gi < fw_val)
            {
                fw_val = gi;
                fw = i;
            }
            if (w[i] > 0.0 && gi > away_val)
            {
                away_val = gi;
                away = i;
            }
        }
        const double fw_gap = pp - fw_val;
        const double away_gap = away_val - pp;

        Vec dir;
        double step_max;
        const bool take_fw = fw_gap >= away_gap || away == g || w[away] >= 1.0;
        if (take_fw)
        {
            dir = difference(points[fw], p);
            step_max = 1.0;
        }
        else
        {
            dir = difference(p, points[away]);
            step_max = w[away] / (1.0 - w[away]);
        }
        const double dd = dot(dir, dir);
        if (dd == 0.0)
            break;
        const double step = std::clamp(-dot(p, dir) / dd, 0.0, step_max);

        if (take_fw)
        {
            for (auto& wi : w)
                wi *= 1.0 - step;
            w[fw] += step;
        }
        else
        {
            for (auto& wi : w)
                wi *= 1.0 + step;
            w[away] -= step;
        }
        for (auto& wi : w)
            if (wi < 1e-16)
                wi = 0.0;

        if (it % kPolishEvery == kPolishEvery - 1)
            polish_support(points, w, tol);
        p = combine(points, w, d);
        gap = current_gap(p);
    }
    if (gap > stop_gap)
    {
        polish_support(points, w, tol);
        p = combine(points, w, d);
        gap = current_gap(p);
    }
    // The loop stops at a 1e-15 relative gap; accepting anything up to 1e-10
    // still honors the 1e-7 optimality certificate.
    if (gap > 1e-10 * scale)
        throw Error(ErrorCode::IterationLimit, "minimum-norm point did not converge in 10000 iterations");

    out.point = std::move(p);
    out.gap = gap;
    out.iterations = it;
    return out;
}

} // namespace linepack
