// Compares the OpenMP kernels against their serial reference twins: same
// bits required, wall time and speedup reported. Exits nonzero if any
// parallel result differs from the serial one.

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "humbertq/laplace.hpp"
#include "humbertq/oracle.hpp"
#include "humbertq/parallel.hpp"

using namespace humbertq;
using Clock = std::chrono::steady_clock;

namespace {

int threads_available() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <typename F>
double best_of(int reps, F&& body) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        body();
        const double s = std::chrono::duration<double>(Clock::now() - t0).count();
        if (s < best) best = s;
    }
    return best;
}

bool identical(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

}  // namespace

int main() {
    int failures = 0;
    std::printf("threads available: %d\n", threads_available());
    if (threads_available() == 1)
        std::printf("single-threaded run: speedups near 1.0 are expected\n");

    {
        const KappaMuParams prm{1.5, 2.0, 1.0};
        const std::size_t n = 2000000;
        const std::uint64_t seed = 12345;
        std::vector<double> parallel_out, serial_out;
        const double t_par =
            best_of(3, [&] { parallel_out = sample_kappa_mu(prm, n, seed); });
        const double t_ser = best_of(
            3, [&] { serial_out = sample_kappa_mu_serial(prm, n, seed); });
        const bool same = identical(parallel_out, serial_out);
        std::printf(
            "sampler  n=%zu: parallel %.3f s, serial %.3f s, speedup %.2fx, "
            "bit-identical: %s\n",
            n, t_par, t_ser, t_ser / t_par, same ? "yes" : "NO");
        if (!same) ++failures;
    }

    {
        const EvalConfig cfg;
        const std::size_t points = 200000;
        const double step = 6.0 / static_cast<double>(points);
        const auto eval = [&](std::size_t i) {
            LaplaceParams prm;
            prm.a2 = SignedSquareArg{1.5};
            prm.b2 = SignedSquareArg{0.05 + step * static_cast<double>(i)};
            prm.c = 1.2;
            prm.p = 0.9;
            prm.mu1 = 3.5;
            prm.mu2 = 1.5;
            return in_dispatch(prm, cfg);
        };
        std::vector<double> parallel_out, serial_out;
        const double t_par =
            best_of(3, [&] { parallel_out = map_indexed(points, eval); });
        const double t_ser =
            best_of(3, [&] { serial_out = map_indexed_serial(points, eval); });
        const bool same = identical(parallel_out, serial_out);
        std::printf(
            "transform grid n=%zu: parallel %.3f s, serial %.3f s, speedup "
            "%.2fx, bit-identical: %s\n",
            points, t_par, t_ser, t_ser / t_par, same ? "yes" : "NO");
        if (!same) ++failures;
    }

    return failures;
}
