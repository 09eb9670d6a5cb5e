// Serial vs OpenMP timings for the data-parallel kernels, plus a check that
// both paths produce identical results.
//
//   bench_kernels [m] [n] [reps]

#include "linepack/core_analysis.hpp"
#include "linepack/sampling.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

using namespace linepack;

namespace {

double seconds(const std::function<void()>& f, int reps)
{
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r)
        f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void row(const char* name, double serial, double parallel, bool same)
{
    std::printf("%-16s %12.6f %12.6f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
                same ? "identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv)
{
    const std::size_t m = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2000;
    const std::size_t n = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 32;
    const int reps = argc > 3 ? std::atoi(argv[3]) : 3;

    sampling::Engine rng(1);
    const auto x = sampling::random_unit_system(m, n, rng);
    const Tolerances tol{};

    std::printf("m = %zu, n = %zu, threads = %d, reps = %d\n", m, n, omp_get_max_threads(), reps);
    std::printf("%-16s %12s %12s %9s\n", "kernel", "serial [s]", "parallel [s]", "speedup");

    const bool gram_same = gram(x, kernels::Exec::Serial).entries == gram(x, kernels::Exec::Parallel).entries;
    row("gram", seconds([&] { gram(x, kernels::Exec::Serial); }, reps),
        seconds([&] { gram(x, kernels::Exec::Parallel); }, reps), gram_same);

    const bool s_same = frame_operator(x, kernels::Exec::Serial) == frame_operator(x, kernels::Exec::Parallel);
    row("frame_operator", seconds([&] { frame_operator(x, kernels::Exec::Serial); }, reps),
        seconds([&] { frame_operator(x, kernels::Exec::Parallel); }, reps), s_same);

    // classification is heavier per index; use a smaller system
    const auto y = sampling::random_unit_system(std::min<std::size_t>(m, 200), std::min<std::size_t>(n, 8), rng);
    const auto a = classify_all_serial(y, tol);
    const auto b = classify_all_parallel(y, tol);
    bool c_same = a.size() == b.size();
    for (std::size_t i = 0; c_same && i < a.size(); ++i)
        c_same = a[i].status == b[i].status && a[i].witness == b[i].witness && a[i].replacement == b[i].replacement;
    row("classify_all", seconds([&] { classify_all_serial(y, tol); }, reps),
        seconds([&] { classify_all_parallel(y, tol); }, reps), c_same);
    return gram_same && s_same && c_same ? 0 : 1;
}
