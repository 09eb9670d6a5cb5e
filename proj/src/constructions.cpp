#include "linepack/constructions.hpp"
#include "linepack/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace linepack {

UnitVectorSystem circular_frame(std::size_t m)
{
    if (m < 2)
        throw Error(ErrorCode::Precondition, "circular frame needs m >= 2");
    std::vector<Vec> v;
    for (std::size_t k = 1; k <= m; ++k)
    {
        const double t = static_cast<double>(k) * std::numbers::pi / static_cast<double>(m);
        v.push_back({std::cos(t), std::sin(t)});
    }
    return UnitVectorSystem::create(2, std::move(v));
}

UnitVectorSystem six_in_r4()
{
    const double a = 1.0 / std::sqrt(3.0);
    const double b = std::sqrt(2.0) / std::sqrt(3.0);
    std::vector<Vec> v = {
        {a, b, 0, 0}, {a, -b, 0, 0}, {a, 0, b, 0}, {a, 0, -b, 0}, {a, 0, 0, b}, {a, 0, 0, -b},
    };
    return UnitVectorSystem::create(4, std::move(v));
}

UnitVectorSystem mub_r2()
{
    const double h = 1.0 / std::sqrt(2.0);
    return UnitVectorSystem::create(2, {{1, 0}, {0, 1}, {h, h}, {h, -h}});
}

UnitVectorSystem simplex_etf(std::size_t n)
{
    if (n < 1)
        throw Error(ErrorCode::Precondition, "simplex needs n >= 1");
    const std::size_t big = n + 1;
    Matrix ones(1, big, 1.0 / std::sqrt(static_cast<double>(big)));
    // Coordinates of the projected basis vectors in an orthonormal basis of
    // ones^perp.
    const Matrix basis = orthonormal_complement(ones, Tolerances{});
    std::vector<Vec> v;
    for (std::size_t i = 0; i < big; ++i)
        v.push_back(normalized(basis.col_vec(i)));
    return UnitVectorSystem::create(n, std::move(v));
}

TightCompletion tight_completion(const UnitVectorSystem& x, const Tolerances& tol)
{
    const auto spec = spectrum(x, tol);
    TightCompletion out;
    out.lambda = spec.eigenvalues.front();
    out.multiplicity = spec.top_multiplicity;
    for (std::size_t j = 0; j < x.dim(); ++j)
    {
        const double lam = spec.eigenvalues[j];
        if (lam < out.lambda - tol.eq_abs)
            out.added.push_back(scaled(spec.eigenvectors.row(j), std::sqrt(out.lambda - lam)));
    }
    return out;
}

NaimarkComplement naimark_complement(const UnitVectorSystem& x, const Tolerances& tol)
{
    const std::size_t m = x.size(), n = x.dim();
    const TightCompletion tc = tight_completion(x, tol);
    const double lambda = tc.lambda;
    const std::size_t k = tc.multiplicity;
    if (!(lambda > 1.0 + tol.eq_abs))
        throw Error(ErrorCode::NotScalable, "largest frame-operator eigenvalue is not above 1");
    if (m <= k)
        throw Error(ErrorCode::DegenerateComplement, "m equals the top multiplicity; the complement is empty");

    // Parseval synthesis matrix: n rows, one column per vector.
    const std::size_t total = m + tc.added.size();
    const double s = 1.0 / std::sqrt(lambda);
    Matrix synth(n, total);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t r = 0; r < n; ++r)
            synth(r, i) = s * x[i][r];
    for (std::size_t i = 0; i < tc.added.size(); ++i)
        for (std::size_t r = 0; r < n; ++r)
            synth(r, m + i) = s * tc.added[i][r];

    const Matrix comp = orthonormal_complement(synth, tol);
    const double c = 1.0 / std::sqrt(1.0 - 1.0 / lambda);
    std::vector<Vec> ys;
    for (std::size_t i = 0; i < m; ++i)
        ys.push_back(scaled(comp.col_vec(i), c));

    NaimarkComplement out{.system = UnitVectorSystem::create(comp.rows(), ys, tol),
                          .lambda = lambda,
                          .multiplicity = k};
    for (std::size_t i = 0; i < m; ++i)
    {
        out.norm_residual = std::max(out.norm_residual, std::abs(norm(ys[i]) - 1.0));
        for (std::size_t j = i + 1; j < m; ++j)
            out.gram_residual =
                std::max(out.gram_residual, std::abs(dot(ys[i], ys[j]) * (1.0 - lambda) - dot(x[i], x[j])));
    }
    if (out.norm_residual > 1e-8 || out.gram_residual > 1e-8)
        throw Error(ErrorCode::InconsistentVerdict, "complement fails the Gram relation within 1e-8");
    return out;
}

UnitVectorSystem double_frame(const UnitVectorSystem& x)
{
    const std::size_t n = x.dim();
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<Vec> plus, minus;
    for (const auto& xi : x.vectors())
    {
        Vec p(2 * n), q(2 * n);
        for (std::size_t r = 0; r < n; ++r)
        {
            p[r] = q[r] = h * xi[r];
            p[n + r] = h * xi[r];
            q[n + r] = -h * xi[r];
        }
        plus.push_back(std::move(p));
        minus.push_back(std::move(q));
    }
    plus.insert(plus.end(), minus.begin(), minus.end());
    return UnitVectorSystem::create(2 * n, std::move(plus));
}

UnitVectorSystem construct_by_name(std::string_view name, std::size_t m, std::size_t n)
{
    if (name == "circular")
        return circular_frame(m);
    if (name == "six-in-r4")
        return six_in_r4();
    if (name == "mub-r2")
        return mub_r2();
    if (name == "simplex")
        return simplex_etf(n);
    throw Error(ErrorCode::Precondition, "unknown construction '" + std::string(name) + "'");
}

} // namespace linepack
