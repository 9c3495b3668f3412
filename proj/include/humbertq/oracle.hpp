#pragma once

#include "humbertq/config.hpp"
#include "humbertq/fading.hpp"
#include "humbertq/laplace.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace humbertq {

struct QuadResult {
    double value = 0.0;
    double abs_err_estimate = 0.0;
    long evaluations = 0;
};

// Adaptive 15-point Gauss-Kronrod quadrature of f over [lo, hi], refining
// until the error estimate falls below max(cfg.quad_abs_tol, 1e-10 |value|).
// Throws convergence_error (with the best estimate in the message) if the
// panel budget is exhausted first.
QuadResult quad_adaptive(const std::function<double(double)>& f, double lo,
                         double hi, const EvalConfig& cfg = {});

// Ground-truth quadrature of the defining integral
//   2 * int_0^U e^{-p t^2} t^{mu2} Q_{mu1}(x t, y) I_{mu2-1}(c t) dt,
// real-argument regime only (a2.s >= 0, b2.s >= 0). The cutoff U is chosen
// so the integrand envelope is below 1e-18 of the accumulated value.
QuadResult quad_in(const LaplaceParams& params, const EvalConfig& cfg = {});

// Ground-truth quadrature of the defining Marcum integral
//   int_{sqrt(b2)}^U t^M e^{-(a2+t^2)/2} I_{M-1}(sqrt(a2) t) / a2^{(M-1)/2} dt
// for M > 0 and real arguments; at a2 = 0 the integrand limit
// t^{2M-1} e^{-t^2/2} / (2^{M-1} Gamma(M)) is used.
QuadResult quad_marcum(double order, double a2, double b2,
                       const EvalConfig& cfg = {});

// Monte-Carlo sampler of kappa-mu power variates for integer mu: each
// variate is omega/(2 mu (1+kappa)) * sum_{i=1}^{2 mu} (g_i + sqrt(kappa))^2
// with independent standard normal g_i. Output is a deterministic function
// of (params, n_samples, seed): variates are generated in fixed-size chunks,
// each chunk from its own generator seeded by mixing the seed with the chunk
// index, so the parallel and serial fills agree bit for bit.
std::vector<double> sample_kappa_mu(const KappaMuParams& params,
                                    std::size_t n_samples, std::uint64_t seed);

// Single-threaded reference implementation of the same stream; used by the
// tests and the benchmark to pin down the parallel fill.
std::vector<double> sample_kappa_mu_serial(const KappaMuParams& params,
                                           std::size_t n_samples,
                                           std::uint64_t seed);

}  // namespace humbertq
