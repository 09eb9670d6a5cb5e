#include "linepack/sampling.hpp"

#include <algorithm>
#include <numeric>

namespace linepack::sampling {

Vec random_unit(std::size_t n, Engine& rng)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;)
    {
        Vec v(n);
        for (auto& c : v)
            c = gauss(rng);
        const double nv = norm(v);
        if (nv > 1e-8)
            return scaled(v, 1.0 / nv);
    }
}

UnitVectorSystem random_unit_system(std::size_t m, std::size_t n, Engine& rng)
{
    std::vector<Vec> v;
    for (std::size_t i = 0; i < m; ++i)
        v.push_back(random_unit(n, rng));
    return UnitVectorSystem::create(n, std::move(v));
}

Matrix random_orthogonal(std::size_t n, Engine& rng)
{
    std::vector<Vec> rows;
    while (rows.size() < n)
    {
        Vec v = random_unit(n, rng);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& r : rows)
                axpy(-dot(r, v), r, v);
        const double nv = norm(v);
        if (nv > 1e-6)
            rows.push_back(scaled(v, 1.0 / nv));
    }
    return Matrix::from_rows(rows, n);
}

UnitVectorSystem rotate(const UnitVectorSystem& x, const Matrix& q)
{
    std::vector<Vec> v;
    for (const auto& xi : x.vectors())
        v.push_back(q * xi);
    return UnitVectorSystem::create(x.dim(), std::move(v));
}

UnitVectorSystem shuffle_and_flip(const UnitVectorSystem& x, Engine& rng)
{
    std::vector<std::size_t> perm(x.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution coin(0.5);
    std::vector<Vec> v;
    for (std::size_t i : perm)
        v.push_back(coin(rng) ? scaled(x[i], -1.0) : x[i]);
    return UnitVectorSystem::create(x.dim(), std::move(v));
}

} // namespace linepack::sampling
