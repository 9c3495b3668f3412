#include "humbertq/laplace.hpp"

#include <cmath>
#include <string>

#include "humbertq/hyp2var.hpp"
#include "humbertq/marcum.hpp"
#include "humbertq/oracle.hpp"
#include "humbertq/specfun.hpp"

namespace humbertq {

void LaplaceParams::validate() const {
    if (!(p > 0.0)) throw domain_error("LaplaceParams: p must be positive");
    if (!(p_tilde() > 0.0)) throw domain_error("LaplaceParams: 2p + a2 must be positive");
    if (c < 0.0) throw domain_error("LaplaceParams: c must be nonnegative");
}

int LaplaceParams::offset() const {
    const double off = mu1 - mu2;
    const double rounded = std::round(off);
    if (std::abs(off - rounded) > 1e-9)
        throw unsupported_order_error(
            "order offset mu1 - mu2 = " + std::to_string(off) +
            " is not an integer; the closed forms cover integer offsets only");
    return static_cast<int>(rounded);
}

const char* to_string(InPath path) {
    switch (path) {
        case InPath::equal_orders: return "equal-orders";
        case InPath::marcum_sum: return "marcum";
        case InPath::proper_integral: return "proper-integral";
        case InPath::quadrature_fallback: return "quadrature-fallback";
    }
    return "unknown";
}

double laplace_bessel_power(double mu, double c, double p) {
    if (!(mu > 0.0)) throw domain_error("laplace_bessel_power: mu must be positive");
    if (!(p > 0.0)) throw domain_error("laplace_bessel_power: p must be positive");
    if (c < 0.0) throw domain_error("laplace_bessel_power: c must be nonnegative");
    if (c == 0.0) {
        if (mu == 1.0) return 1.0 / p;
        if (mu > 1.0) return 0.0;
        throw domain_error("laplace_bessel_power: c = 0 with mu < 1 diverges");
    }
    return std::pow(0.5 * c, mu - 1.0) * std::pow(p, -mu) * std::exp(c * c / (4.0 * p));
}

double in_equal_orders(const LaplaceParams& params, const EvalConfig& cfg) {
    cfg.validate();
    params.validate();
    if (params.offset() != 0)
        throw domain_error("in_equal_orders: requires mu1 = mu2");
    const double pt = params.p_tilde();
    const double a2p = params.a2.s * params.c * params.c / (2.0 * params.p * pt);
    const double b2p = params.b2.s * 2.0 * params.p / pt;
    return laplace_bessel_power(params.mu2, params.c, params.p) *
           marcum_q(params.mu2, SignedSquareArg{a2p}, SignedSquareArg{b2p}, cfg);
}

double in_plus_n_marcum(const LaplaceParams& params, const EvalConfig& cfg) {
    cfg.validate();
    params.validate();
    const int n = params.offset();
    if (n < 1) throw domain_error("in_plus_n_marcum: requires mu1 = mu2 + n with n >= 1");
    if (!(params.mu2 > -1.0)) throw domain_error("in_plus_n_marcum: requires mu2 > -1");
    const double a2 = params.a2.s;
    const double b2 = params.b2.s;
    if (a2 < 0.0 || b2 < 0.0)
        throw domain_error("in_plus_n_marcum: arguments must be real (squares nonnegative)");
    const double c = params.c;
    const double p = params.p;
    const double mu2 = params.mu2;

    if (a2 == 0.0)
        return upper_gamma_reg(mu2 + n, 0.5 * b2, cfg) * laplace_bessel_power(mu2, c, p);
    if (!(c > 0.0))
        throw domain_error("in_plus_n_marcum: requires c > 0 (c = 0 is handled upstream)");

    LaplaceParams equal = params;
    equal.mu1 = mu2;
    const double base = in_equal_orders(equal, cfg);
    if (b2 == 0.0) return base;

    const double pt = params.p_tilde();
    const double zbar = c * c / (2.0 * pt);
    const double wbar = a2 * b2 / (2.0 * pt);
    const double dz = a2 * b2 * c * c / (4.0 * pt * pt);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j <= 2 * k; ++j) {
            sum += std::pow(0.5 * b2, j) * std::pow(a2 / pt, j - k) *
                   delta_coeff(j, k + 1, mu2 + k + 1.0, -wbar, dz) *
                   marcum_g_mod(mu2 + k - j, zbar, wbar, cfg);
        }
    }
    const double corr = 2.0 / c * std::pow(a2 / c, -mu2) * std::exp(-0.5 * b2) * sum;
    return base + corr;
}

double in_plus_n_quadrature(const LaplaceParams& params, const EvalConfig& cfg) {
    cfg.validate();
    params.validate();
    const int n = params.offset();
    if (n < 1) throw domain_error("in_plus_n_quadrature: requires mu1 = mu2 + n with n >= 1");
    if (!(params.mu2 > 0.0)) throw domain_error("in_plus_n_quadrature: requires mu2 > 0");
    const double a2 = params.a2.s;
    const double b2 = params.b2.s;
    if (a2 < 0.0 || b2 < 0.0)
        throw domain_error("in_plus_n_quadrature: arguments must be real (squares nonnegative)");
    const double c = params.c;
    const double mu2 = params.mu2;

    // a2 = 0 collapses to the exact constant-Marcum value; delegate for exactness.
    if (a2 == 0.0) return in_plus_n_marcum(params, cfg);
    if (!(c > 0.0))
        throw domain_error("in_plus_n_quadrature: requires c > 0 (c = 0 is handled upstream)");

    LaplaceParams equal = params;
    equal.mu1 = mu2;
    const double base = in_equal_orders(equal, cfg);
    if (b2 == 0.0) return base;

    const double pt = params.p_tilde();
    const double ea = a2 * b2 / (2.0 * pt);
    const double fb = a2 * b2 * c * c / (4.0 * pt * pt);
    double total = 0.0;
    for (int j = 1; j <= n; ++j) {
        std::function<double(double)> integrand;
        if (mu2 >= 1.0) {
            integrand = [&, j](double t) {
                return std::pow(t, mu2 - 1.0) * std::pow(1.0 - t, j - 1.0) *
                       std::exp(ea * t) * hyp0f1(mu2, fb * t, cfg);
            };
        } else {
            // t = u^{1/mu2} removes the integrable endpoint singularity at t = 0.
            integrand = [&, j](double u) {
                if (u <= 0.0) return 1.0 / mu2;
                const double t = std::pow(u, 1.0 / mu2);
                return (1.0 / mu2) * std::pow(1.0 - t, j - 1.0) * std::exp(ea * t) *
                       hyp0f1(mu2, fb * t, cfg);
            };
        }
        const double piece = quad_adaptive(integrand, 0.0, 1.0, cfg).value;
        total += std::pow(0.5 * b2, j) / std::tgamma(static_cast<double>(j)) * piece;
    }
    const double corr = 2.0 / pt * std::pow(b2 * c / (2.0 * pt), mu2 - 1.0) *
                        std::exp(-0.5 * b2 + c * c / (2.0 * pt)) * rgamma(mu2) * total;
    return base + corr;
}

double in_minus_n(const LaplaceParams& params, const EvalConfig& cfg) {
    cfg.validate();
    params.validate();
    const int n = params.offset();
    if (n > -1) throw domain_error("in_minus_n: requires mu1 = mu2 - m with m >= 1");
    const int m = -n;
    const double a2 = params.a2.s;
    const double b2 = params.b2.s;
    if (a2 < 0.0 || b2 < 0.0)
        throw domain_error("in_minus_n: arguments must be real (squares nonnegative)");
    if (a2 == 0.0)
        throw domain_error("in_minus_n: a2 = 0 is handled upstream as a constant Marcum factor");
    const double c = params.c;
    const double p = params.p;
    const double mu1 = params.mu1;
    const double mu2 = params.mu2;

    LaplaceParams equal = params;
    equal.mu1 = mu2;
    const double base = in_equal_orders(equal, cfg);
    if (b2 == 0.0) {
        if (mu1 > 0.0) return base;
        throw domain_error("in_minus_n: b2 = 0 with mu1 <= 0 needs the quadrature fallback");
    }
    if (!(c > 0.0))
        throw domain_error("in_minus_n: requires c > 0 (c = 0 is handled upstream)");

    const double pt = params.p_tilde();
    const double al = std::sqrt(a2);
    const double be = std::sqrt(b2);
    const double x = c * al * be / pt;
    double sum = 0.0;
    for (int k = 0; k < m; ++k) {
        for (int j = 0; j + k < m; ++j) {
            sum += std::pow(be / c, j + k) * std::pow(pt / al, k) * std::pow(-al, j) *
                   pochhammer(static_cast<double>(-m + k + 1), j) /
                   std::tgamma(j + 1.0) * bessel_i(mu1 + k + j, x, cfg);
        }
    }
    const double corr = 2.0 / c * std::pow(c / pt, m) * std::pow(be / al, mu1) *
                        std::exp((0.5 * c * c - p * b2) / pt) * sum;
    return base - corr;
}

InResult in_dispatch_ex(const LaplaceParams& params, const EvalConfig& cfg) {
    cfg.validate();
    params.validate();
    const int n = params.offset();
    const double a2 = params.a2.s;
    const double b2 = params.b2.s;

    if (a2 < 0.0 || b2 < 0.0) {
        if (n != 0)
            throw domain_error(
                "in_dispatch: imaginary arguments are supported at equal orders only");
        return {in_equal_orders(params, cfg), InPath::equal_orders};
    }
    if (params.mu1 <= -1.0 && std::abs(params.mu1 - std::round(params.mu1)) > 1e-9)
        throw unsupported_order_error(
            "in_dispatch: non-integer Marcum order mu1 <= -1 is not supported");

    if (a2 == 0.0) {
        // The Marcum factor is constant in t and scales the plain Bessel transform.
        const double q = marcum_q(params.mu1, SignedSquareArg{0.0}, SignedSquareArg{b2}, cfg);
        return {q * laplace_bessel_power(params.mu2, params.c, params.p),
                n == 0 ? InPath::equal_orders : InPath::marcum_sum};
    }
    if (params.c == 0.0) {
        if (params.mu2 > 1.0)
            return {0.0, n == 0 ? InPath::equal_orders : InPath::marcum_sum};
        if (params.mu2 == 1.0) {
            if (n == 0) return {in_equal_orders(params, cfg), InPath::equal_orders};
            return {quad_in(params, cfg).value, InPath::quadrature_fallback};
        }
        throw domain_error("in_dispatch: c = 0 with mu2 < 1 diverges");
    }
    if (b2 == 0.0) {
        if (params.mu1 > 0.0)
            return {laplace_bessel_power(params.mu2, params.c, params.p),
                    n == 0 ? InPath::equal_orders : InPath::marcum_sum};
        return {quad_in(params, cfg).value, InPath::quadrature_fallback};
    }

    if (n == 0) return {in_equal_orders(params, cfg), InPath::equal_orders};
    if (n >= 1) {
        if (params.mu2 > -1.0) {
            const double value = in_plus_n_marcum(params, cfg);
            if (cfg.paranoid && params.mu2 > 0.0) {
                const double check = in_plus_n_quadrature(params, cfg);
                const double scale = std::max({std::abs(value), std::abs(check), 1e-300});
                if (std::abs(value - check) / scale > 1e-6)
                    throw convergence_error(
                        "in_dispatch: closed-form and proper-integral routes disagree");
            }
            return {value, InPath::marcum_sum};
        }
        if (params.mu2 == std::round(params.mu2))
            return {quad_in(params, cfg).value, InPath::quadrature_fallback};
        throw domain_error("in_dispatch: n >= 1 with non-integer mu2 <= -1 diverges");
    }
    return {in_minus_n(params, cfg), InPath::marcum_sum};
}

double in_dispatch(const LaplaceParams& params, const EvalConfig& cfg) {
    return in_dispatch_ex(params, cfg).value;
}

double in_swapped(double a2, double b2, double c, double p, int mu1, int mu2,
                  const EvalConfig& cfg) {
    cfg.validate();
    if (a2 < 0.0 || b2 < 0.0)
        throw domain_error("in_swapped: arguments must be real (squares nonnegative)");
    LaplaceParams swapped;
    swapped.a2 = SignedSquareArg{b2};
    swapped.b2 = SignedSquareArg{a2};
    swapped.c = c;
    swapped.p = p;
    swapped.mu1 = 1.0 - mu1;
    swapped.mu2 = mu2;
    return laplace_bessel_power(static_cast<double>(mu2), c, p) - in_dispatch(swapped, cfg);
}

}  // namespace humbertq
