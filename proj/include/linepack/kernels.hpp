#pragma once

#include "linepack/matrix.hpp"

#include <span>
#include <string_view>

// Data-parallel inner loops. Each kernel has a serial reference and an OpenMP
// version; the parallel versions split work by output entry so that every
// entry is summed in the same order and results are bit-identical to the
// serial reference regardless of thread count.
namespace linepack::kernels {

enum class Exec
{
    Serial,
    Parallel,
};

std::string_view to_string(Exec exec);

/// G_ij = <x_i, x_j>, m x m.
Matrix gram_serial(std::span<const Vec> vectors);
Matrix gram_parallel(std::span<const Vec> vectors);

/// S = sum_i x_i x_i^T, n x n.
Matrix frame_operator_serial(std::span<const Vec> vectors, std::size_t dim);
Matrix frame_operator_parallel(std::span<const Vec> vectors, std::size_t dim);

/// max_{i != j} |G_ij|; zero for fewer than two rows.
double max_offdiag_abs(const Matrix& gram);

inline Matrix gram(std::span<const Vec> vectors, Exec exec = Exec::Parallel)
{
    return exec == Exec::Serial ? gram_serial(vectors) : gram_parallel(vectors);
}

inline Matrix frame_operator(std::span<const Vec> vectors, std::size_t dim, Exec exec = Exec::Parallel)
{
    return exec == Exec::Serial ? frame_operator_serial(vectors, dim) : frame_operator_parallel(vectors, dim);
}

} // namespace linepack::kernels
