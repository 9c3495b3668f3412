#include "humbertq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "humbertq/marcum.hpp"
#include "humbertq/specfun.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace humbertq {

namespace {

// 15-point Kronrod nodes on [-1, 1] (positive half) with the embedded
// 7-point Gauss rule on the odd-indexed nodes.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
    double err = 0.0;
};

bool panel_less(const Panel& a, const Panel& b) {
    return a.err < b.err;
}

Panel gk15(const std::function<double(double)>& f, double lo, double hi, long& evaluations) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (lo + hi);

    double fv1[7];
    double fv2[7];
    const double fc = f(mid);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = kWgk[7] * std::abs(fc);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        fv1[i] = f(mid - dx);
        fv2[i] = f(mid + dx);
        const double fsum = fv1[i] + fv2[i];
        resk += kWgk[i] * fsum;
        resabs += kWgk[i] * (std::abs(fv1[i]) + std::abs(fv2[i]));
        if (i % 2 == 1) resg += kWg[i / 2] * fsum;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::abs(fv1[i] - mean) + std::abs(fv2[i] - mean));

    Panel out;
    out.lo = lo;
    out.hi = hi;
    out.value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);
    out.err = err;
    evaluations += 15;
    return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::size_t kChunk = 8192;

// One chunk of variates from its own deterministically derived generator, so
// serial and parallel schedules produce bit-identical output.
void fill_kappa_mu_chunk(const KappaMuParams& params, std::size_t begin, std::size_t end,
                         std::uint64_t seed, std::uint64_t chunk_index, double* out) {
    std::mt19937_64 gen(splitmix64(seed ^ splitmix64(chunk_index + 1)));
    std::normal_distribution<double> normal(0.0, 1.0);
    const int clusters = 2 * static_cast<int>(std::lround(params.mu));
    const double shift = std::sqrt(params.kappa);
    const double scale = params.omega / (2.0 * params.mu * (1.0 + params.kappa));
    for (std::size_t i = begin; i < end; ++i) {
        double sum = 0.0;
        for (int k = 0; k < clusters; ++k) {
            const double g = normal(gen) + shift;
            sum += g * g;
        }
        out[i] = scale * sum;
    }
}

std::vector<double> sample_kappa_mu_impl(const KappaMuParams& params, std::size_t n_samples,
                                         std::uint64_t seed, bool parallel) {
    params.validate();
    if (std::abs(params.mu - std::round(params.mu)) > 1e-9 || params.mu < 1.0)
        throw domain_error("sample_kappa_mu: mu must be a positive integer (cluster count)");
    std::vector<double> out(n_samples);
    const std::size_t chunks = (n_samples + kChunk - 1) / kChunk;
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t ci = 0; ci < static_cast<std::ptrdiff_t>(chunks); ++ci) {
            const std::size_t begin = static_cast<std::size_t>(ci) * kChunk;
            const std::size_t end = std::min(n_samples, begin + kChunk);
            fill_kappa_mu_chunk(params, begin, end, seed, static_cast<std::uint64_t>(ci),
                                out.data());
        }
    } else {
        for (std::size_t ci = 0; ci < chunks; ++ci) {
            const std::size_t begin = ci * kChunk;
            const std::size_t end = std::min(n_samples, begin + kChunk);
            fill_kappa_mu_chunk(params, begin, end, seed, ci, out.data());
        }
    }
    return out;
}

}  // namespace

QuadResult quad_adaptive(const std::function<double(double)>& f, double lo, double hi,
                         const EvalConfig& cfg) {
    cfg.validate();
    if (!(hi > lo)) throw domain_error("quad_adaptive: requires hi > lo");

    constexpr std::size_t kMaxPanels = 4000;
    long evaluations = 0;
    std::vector<Panel> heap;
    heap.reserve(256);
    heap.push_back(gk15(f, lo, hi, evaluations));

    double total = heap.front().value;
    double total_err = heap.front().err;
    while (true) {
        const double target = std::max(cfg.quad_abs_tol, 1e-10 * std::abs(total));
        if (total_err <= target) break;
        std::pop_heap(heap.begin(), heap.end(), panel_less);
        const Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (heap.size() + 2 > kMaxPanels || !(mid > worst.lo && mid < worst.hi)) {
            throw convergence_error(
                "quad_adaptive: failed to reach tolerance; best estimate " +
                std::to_string(total) + " with error estimate " + std::to_string(total_err));
        }
        const Panel left = gk15(f, worst.lo, mid, evaluations);
        const Panel right = gk15(f, mid, worst.hi, evaluations);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), panel_less);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), panel_less);
    }
    // Resum from the panels to shed accumulated increment drift.
    double value = 0.0;
    double err = 0.0;
    for (const Panel& panel : heap) {
        value += panel.value;
        err += panel.err;
    }
    return {value, err, evaluations};
}

QuadResult quad_in(const LaplaceParams& params, const EvalConfig& cfg) {
    cfg.validate();
    params.validate();
    const double a2 = params.a2.s;
    const double b2 = params.b2.s;
    if (a2 < 0.0 || b2 < 0.0)
        throw domain_error("quad_in: arguments must be real (squares nonnegative)");
    const double c = params.c;
    const double p = params.p;
    const double mu1 = params.mu1;
    const double mu2 = params.mu2;

    // Upper cutoff from the integrand envelope exp(-p t^2 + c t) t^{mu2}.
    double upper = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double next = std::sqrt(
            (45.0 + std::max(c * upper, 0.0) +
             std::abs(mu2) * std::log(std::max(upper, 2.0))) / p);
        if (std::abs(next - upper) < 1e-9 * next) {
            upper = next;
            break;
        }
        upper = next;
    }

    auto integrand = [&](double t) -> double {
        if (t <= 0.0) return 0.0;
        const double q =
            marcum_q(mu1, SignedSquareArg{a2 * t * t}, SignedSquareArg{b2}, cfg);
        return 2.0 * std::exp(-p * t * t) * std::pow(t, mu2) * q *
               bessel_i(mu2 - 1.0, c * t, cfg);
    };
    return quad_adaptive(integrand, 0.0, upper, cfg);
}

QuadResult quad_marcum(double order, double a2, double b2, const EvalConfig& cfg) {
    cfg.validate();
    if (!(order > 0.0)) throw domain_error("quad_marcum: order must be positive");
    if (a2 < 0.0 || b2 < 0.0) throw domain_error("quad_marcum: arguments must be nonnegative");

    const double root_a = std::sqrt(a2);
    double upper = std::max(root_a, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double next =
            root_a + std::sqrt(90.0 + 2.0 * std::max(order, 1.0) *
                               std::log(std::max(upper, 2.0)));
        if (std::abs(next - upper) < 1e-9 * next) {
            upper = next;
            break;
        }
        upper = next;
    }
    const double lower = std::sqrt(b2);
    upper = std::max(upper, lower + 12.0);

    auto integrand = [&](double x) -> double {
        if (x <= 0.0) return 0.0;
        if (a2 == 0.0) {
            return std::exp((2.0 * order - 1.0) * std::log(x) - 0.5 * x * x -
                            (order - 1.0) * std::log(2.0) - std::lgamma(order));
        }
        return std::exp(order * std::log(x) - 0.5 * (a2 + x * x) +
                        ln_bessel_i(order - 1.0, root_a * x, cfg) -
                        0.5 * (order - 1.0) * std::log(a2));
    };
    return quad_adaptive(integrand, lower, upper, cfg);
}

std::vector<double> sample_kappa_mu(const KappaMuParams& params, std::size_t n_samples,
                                    std::uint64_t seed) {
    return sample_kappa_mu_impl(params, n_samples, seed, true);
}

std::vector<double> sample_kappa_mu_serial(const KappaMuParams& params, std::size_t n_samples,
                                           std::uint64_t seed) {
    return sample_kappa_mu_impl(params, n_samples, seed, false);
}

}  // namespace humbertq
