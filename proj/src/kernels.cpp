#include "linepack/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace linepack::kernels {

std::string_view to_string(Exec exec)
{
    return exec == Exec::Serial ? "serial" : "parallel";
}

Matrix gram_serial(std::span<const Vec> vectors)
{
    const std::size_t m = vectors.size();
    Matrix g(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j)
            g(i, j) = g(j, i) = dot(vectors[i], vectors[j]);
    return g;
}

Matrix gram_parallel(std::span<const Vec> vectors)
{
    const auto m = static_cast<std::int64_t>(vectors.size());
    Matrix g(vectors.size(), vectors.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < m; ++i)
        for (std::int64_t j = i; j < m; ++j)
        {
            const double v = dot(vectors[i], vectors[j]);
            g(i, j) = v;
            g(j, i) = v;
        }
    return g;
}

Matrix frame_operator_serial(std::span<const Vec> vectors, std::size_t dim)
{
    Matrix s(dim, dim);
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = a; b < dim; ++b)
        {
            double acc = 0.0;
            for (const auto& x : vectors)
                acc += x[a] * x[b];
            s(a, b) = s(b, a) = acc;
        }
    return s;
}

Matrix frame_operator_parallel(std::span<const Vec> vectors, std::size_t dim)
{
    Matrix s(dim, dim);
    const auto n = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = a; b < n; ++b)
        {
            double acc = 0.0;
            for (const auto& x : vectors)
                acc += x[a] * x[b];
            s(a, b) = acc;
            s(b, a) = acc;
        }
    return s;
}

double max_offdiag_abs(const Matrix& gram)
{
    double best = 0.0;
    for (std::size_t i = 0; i < gram.rows(); ++i)
        for (std::size_t j = i + 1; j < gram.cols(); ++j)
            best = std::max(best, std::abs(gram(i, j)));
    return best;
}

} // namespace linepack::kernels
