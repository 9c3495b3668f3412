#include "humbertq/marcum.hpp"

#include <algorithm>
#include <cmath>

#include "humbertq/hyp2var.hpp"
#include "humbertq/specfun.hpp"

namespace humbertq {

namespace {

bool is_integer(double x) {
    return x == std::floor(x);
}

// w^e / Gamma(e + 1) with the magnitude kept in log space; exact zero at the
// Gamma poles so series over integer-shifted orders can walk through them.
double pow_over_gamma(double log_w, double e) {
    const double a = e + 1.0;
    if (a <= 0.0 && a == std::floor(a)) return 0.0;
    const LnGamma lg = ln_gamma(a);
    return lg.sign * std::exp(e * log_w - lg.log_abs);
}

// Canonical series for positive order and real arguments: Poisson weights in
// a2/2 against upper regularized gamma tails in b2/2. The gamma tails are
// marched bidirectionally from the Poisson mode with the one-step order
// recurrence, so only a single direct incomplete-gamma evaluation is needed.
double marcum_poisson_full(double order, double a2, double b2, const EvalConfig& cfg) {
    const double lam = 0.5 * a2;
    const double x = 0.5 * b2;
    if (x == 0.0) return 1.0;
    if (lam == 0.0) return upper_gamma_reg(order, x, cfg);

    const int k0 = static_cast<int>(lam);
    const double w0 = std::exp(-lam + k0 * std::log(lam) - std::lgamma(k0 + 1.0));
    const double q0 = upper_gamma_reg(order + k0, x, cfg);
    const double d0 = std::exp((order + k0) * std::log(x) - x - std::lgamma(order + k0 + 1.0));

    double total = w0 * q0;
    {
        double w = w0, q = q0, d = d0;
        for (int k = k0 + 1; k - k0 < cfg.max_terms; ++k) {
            w *= lam / k;
            q += d;
            d *= x / (order + k);
            if (q > 1.0) q = 1.0;
            const double term = w * q;
            total += term;
            if (term <= cfg.rel_tol * total && k > lam) break;
            if (k - k0 == cfg.max_terms - 1)
                throw convergence_error("marcum_q: Poisson series did not converge within max_terms");
        }
    }
    // Downward sweep to k = 0; cheap because the mode sits at lam = a2/2.
    {
        double w = w0, q = q0, d = d0;
        for (int k = k0; k >= 1; --k) {
            w *= k / lam;
            d *= (order + k) / x;
            q -= d;
            if (q < 0.0) q = 0.0;
            total += w * q;
        }
    }
    return std::min(total, 1.0);
}

// Laguerre expansion covering one or both squared arguments negative; the
// phases of the imaginary arguments cancel into the strictly real form below.
double marcum_modified(double order, double a2, double b2, const EvalConfig& cfg) {
    if (b2 == 0.0) {
        if (order > 0.0) return 1.0;
        if (order == 0.0) return 1.0 - std::exp(-0.5 * a2);
        throw domain_error("marcum_q: order < 0 with second argument 0 diverges");
    }
    const double lag_arg = 0.5 * a2;  // signed: negative means imaginary first argument
    const double wmag = 0.5 * std::abs(b2);
    const bool alternating = b2 > 0.0;
    const double log_w = std::log(wmag);
    const double alpha = order - 1.0;

    double lk_prev = 0.0;
    double lk = 1.0;
    double total = 0.0;
    bool seen_nonzero = false;
    int small_run = 0;
    const int cap = std::max(cfg.max_terms, 20000);
    for (int k = 0; k < cap; ++k) {
        if (k > 0) {
            const double next =
                ((2.0 * (k - 1) + 1.0 + alpha - lag_arg) * lk - ((k - 1) + alpha) * lk_prev) / k;
            lk_prev = lk;
            lk = next;
        }
        const double sgn = (alternating && k % 2 == 1) ? -1.0 : 1.0;
        const double term = sgn * lk * pow_over_gamma(log_w, order + k);
        total += term;
        if (!std::isfinite(total))
            throw convergence_error("marcum_q: modified-argument series overflowed");
        if (term != 0.0) seen_nonzero = true;
        if (seen_nonzero && std::abs(term) <= cfg.rel_tol * (std::abs(total) + 1e-300)) {
            if (++small_run >= 2) break;
        } else {
            small_run = 0;
        }
        if (k == cap - 1)
            throw convergence_error("marcum_q: modified-argument series did not converge");
    }
    return 1.0 - std::exp(-lag_arg) * total;
}

}  // namespace

double one_minus_q_phi3(double order, double a2, double b2, const EvalConfig& cfg) {
    cfg.validate();
    if (a2 < 0.0 || b2 < 0.0)
        throw domain_error("one_minus_q_phi3: arguments must be real (squares nonnegative)");
    if (b2 == 0.0) {
        if (order > 0.0) return 0.0;
        throw domain_error("one_minus_q_phi3: order <= 0 requires b2 > 0");
    }
    const double lead = order * std::log(0.5 * b2) - 0.5 * (a2 + b2);
    return std::exp(lead) *
           phi3_regularized(1.0, order + 1.0, 0.5 * b2, 0.25 * a2 * b2, cfg);
}

double marcum_q(double order, SignedSquareArg a2, SignedSquareArg b2, const EvalConfig& cfg) {
    cfg.validate();
    const double x = a2.s;
    const double y = b2.s;
    if (x < 0.0 || y < 0.0) return marcum_modified(order, x, y, cfg);

    if (order > 0.0) {
        if (y == 0.0) return 1.0;
        return marcum_poisson_full(order, x, y, cfg);
    }
    if (is_integer(order)) {
        // Reflection: Q_M(x, y) = 1 - Q_{1-M}(y, x) extends to all integer M <= 0.
        return 1.0 - marcum_poisson_full(1.0 - order, y, x, cfg);
    }
    if (order > -1.0) {
        if (y == 0.0)
            throw domain_error("marcum_q: order in (-1, 0) with second argument 0 diverges");
        return 1.0 - one_minus_q_phi3(order, x, y, cfg);
    }
    throw unsupported_order_error(
        "marcum_q: non-integer order <= -1 is outside the supported real-argument domain");
}

double marcum_recurrence_rhs(double order, int n, SignedSquareArg a2, SignedSquareArg b2,
                             const EvalConfig& cfg) {
    cfg.validate();
    if (n < 1) throw domain_error("marcum_recurrence_rhs: n must be a positive integer");
    const double x2 = a2.s;
    const double y2 = b2.s;
    if (x2 < 0.0 || y2 < 0.0)
        throw domain_error("marcum_recurrence_rhs: arguments must be real");
    if (x2 == 0.0) throw domain_error("marcum_recurrence_rhs: first argument must be nonzero");

    const double q = marcum_q(order, a2, b2, cfg);
    const double pref = std::exp(-0.5 * (x2 + y2));
    double sum = 0.0;
    if (y2 == 0.0) {
        // Limit of (y/x)^{order+k} I_{order+k}(xy) as y -> 0.
        for (int k = 0; k < n; ++k) {
            const double e = order + k;
            if (e > 0.0) continue;
            if (e == std::floor(e)) {
                const int m = static_cast<int>(-e);
                sum += std::pow(0.5 * x2, m) / std::tgamma(m + 1.0);
            } else {
                throw domain_error("marcum_recurrence_rhs: non-integer order with y = 0 diverges");
            }
        }
        return q + pref * sum;
    }
    const double ratio = std::sqrt(y2 / x2);
    const double prod = std::sqrt(x2 * y2);
    for (int k = 0; k < n; ++k)
        sum += std::pow(ratio, order + k) * bessel_i(order + k, prod, cfg);
    return q + pref * sum;
}

double marcum_phi3_M_lt_2(double order, double a2, double b2, const EvalConfig& cfg) {
    cfg.validate();
    if (!(order < 2.0)) throw domain_error("marcum_phi3_M_lt_2: requires order < 2");
    if (!(a2 > 0.0)) throw domain_error("marcum_phi3_M_lt_2: requires a2 > 0");
    if (b2 < 0.0) throw domain_error("marcum_phi3_M_lt_2: requires b2 >= 0");
    return std::pow(0.5 * a2, 1.0 - order) * std::exp(-0.5 * (a2 + b2)) *
           phi3_regularized(1.0, 2.0 - order, 0.5 * a2, 0.25 * a2 * b2, cfg);
}

double phi3_via_marcum(int b, double g, double t, double v, const EvalConfig& cfg) {
    cfg.validate();
    if (b < 1) throw domain_error("phi3_via_marcum: b must be a positive integer");
    if (!(t > 0.0)) throw domain_error("phi3_via_marcum: t must be positive");
    if (v < 0.0) throw domain_error("phi3_via_marcum: v must be nonnegative");
    double total = 0.0;
    for (int j = 0; j <= 2 * (b - 1); ++j) {
        total += delta_coeff(j, b, g, t, v) * std::pow(t, 1.0 - g + j) *
                 one_minus_q_phi3(g - 1.0 - j, 2.0 * v / t, 2.0 * t, cfg);
    }
    const LnGamma lg = ln_gamma(g);
    return lg.sign * std::exp(lg.log_abs + v / t + t) * total;
}

double marcum_g_mod(double order, double zbar, double wbar, const EvalConfig& cfg) {
    cfg.validate();
    if (zbar < 0.0 || wbar < 0.0)
        throw domain_error("marcum_g_mod: zbar and wbar must be nonnegative");
    if (wbar == 0.0) {
        if (order > 0.0) return 0.0;
        if (order == 0.0) return std::exp(zbar);
        throw domain_error("marcum_g_mod: order < 0 with wbar = 0 diverges");
    }
    const double log_w = std::log(wbar);
    const double alpha = order - 1.0;
    double lk_prev = 0.0;
    double lk = 1.0;
    double total = 0.0;
    bool seen_nonzero = false;
    int small_run = 0;
    const int cap = std::max(cfg.max_terms, 20000);
    for (int k = 0; k < cap; ++k) {
        if (k > 0) {
            const double next =
                ((2.0 * (k - 1) + 1.0 + alpha + zbar) * lk - ((k - 1) + alpha) * lk_prev) / k;
            lk_prev = lk;
            lk = next;
        }
        const double term = lk * pow_over_gamma(log_w, order + k);
        total += term;
        if (!std::isfinite(total))
            throw convergence_error("marcum_g_mod: series overflowed before convergence");
        if (term != 0.0) seen_nonzero = true;
        if (seen_nonzero && std::abs(term) <= cfg.rel_tol * (std::abs(total) + 1e-300)) {
            if (++small_run >= 2) break;
        } else {
            small_run = 0;
        }
        if (k == cap - 1)
            throw convergence_error("marcum_g_mod: series did not converge");
    }
    return std::exp(zbar) * total;
}

}  // namespace humbertq
