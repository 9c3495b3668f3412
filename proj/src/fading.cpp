#include "humbertq/fading.hpp"

#include <cmath>
#include <limits>

#include "humbertq/laplace.hpp"
#include "humbertq/marcum.hpp"
#include "humbertq/oracle.hpp"
#include "humbertq/specfun.hpp"

namespace humbertq {

namespace {

// Radius beyond which the power density has decayed by ~e^{-50} relative to
// its exponential envelope; quadratic in sqrt(x/omega).
double kappa_mu_upper_cutoff(const KappaMuParams& params) {
    const double k = params.kappa;
    const double mu = params.mu;
    const double s = std::sqrt(k * (1.0 + k));
    const double root =
        (2.0 * mu * s + std::sqrt(4.0 * mu * mu * k * (1.0 + k) + 200.0 * mu * (1.0 + k))) /
        (2.0 * mu * (1.0 + k));
    return params.omega * root * root * 1.2 + 1.0;
}

double closed_form_prefactor(double kappa, double mu, double omega) {
    return mu * std::pow(1.0 + kappa, 0.5 * (mu + 1.0)) /
           (std::pow(kappa, 0.5 * (mu - 1.0)) * std::exp(mu * kappa) *
            std::pow(omega, 0.5 * (mu + 1.0)));
}

}  // namespace

void KappaMuParams::validate() const {
    if (!(kappa > 0.0)) throw domain_error("KappaMuParams: kappa must be positive");
    if (!(mu > 0.0)) throw domain_error("KappaMuParams: mu must be positive");
    if (!(omega > 0.0)) throw domain_error("KappaMuParams: omega must be positive");
}

double kappa_mu_pdf(const KappaMuParams& params, double x, const EvalConfig& cfg) {
    cfg.validate();
    params.validate();
    if (x < 0.0) throw domain_error("kappa_mu_pdf: x must be nonnegative");
    const double k = params.kappa;
    const double mu = params.mu;
    const double om = params.omega;
    if (x == 0.0) {
        if (mu > 1.0) return 0.0;
        if (mu == 1.0) return (1.0 + k) * std::exp(-k) / om;
        return std::numeric_limits<double>::infinity();
    }
    const double lg = std::log(mu) + 0.5 * (mu + 1.0) * std::log1p(k) -
                      0.5 * (mu - 1.0) * std::log(k) - mu * k -
                      0.5 * (mu + 1.0) * std::log(om) + 0.5 * (mu - 1.0) * std::log(x) -
                      mu * (1.0 + k) * x / om;
    const double arg = 2.0 * mu * std::sqrt(k * (1.0 + k) * x / om);
    return std::exp(lg + ln_bessel_i(mu - 1.0, arg, cfg));
}

double kappa_mu_cdf(const KappaMuParams& params, double z, const EvalConfig& cfg) {
    cfg.validate();
    params.validate();
    if (z < 0.0) throw domain_error("kappa_mu_cdf: z must be nonnegative");
    if (z == 0.0) return 0.0;
    return 1.0 - marcum_q(params.mu, SignedSquareArg{2.0 * params.kappa * params.mu},
                          SignedSquareArg{2.0 * (1.0 + params.kappa) * params.mu * z /
                                          params.omega},
                          cfg);
}

TaggedProb outage_probability(const InterferenceScenario& scenario, double sir_db, double z,
                              const EvalConfig& cfg) {
    cfg.validate();
    scenario.soi.validate();
    scenario.cci.validate();
    const double mu_s = std::round(scenario.soi.mu);
    const double mu_i = std::round(scenario.cci.mu);
    if (std::abs(scenario.soi.mu - mu_s) > 1e-9 || std::abs(scenario.cci.mu - mu_i) > 1e-9 ||
        mu_s < 1.0 || mu_i < 1.0)
        throw domain_error("outage_probability: cluster counts mu must be positive integers");
    if (z < 0.0) throw domain_error("outage_probability: z must be nonnegative");
    if (z == 0.0) return {0.0, true};

    const double kappa_s = scenario.soi.kappa;
    const double kappa_i = scenario.cci.kappa;
    // Omegas are pinned by the SIR: unit interferer power, 10^(sir/10) signal power.
    const double omega_i = 1.0;
    const double omega_s = std::pow(10.0, sir_db / 10.0) * omega_i;

    LaplaceParams params;
    params.a2 = SignedSquareArg{2.0 * (1.0 + kappa_s) * mu_s * z / omega_s};
    params.b2 = SignedSquareArg{2.0 * kappa_s * mu_s};
    params.c = 2.0 * mu_i * std::sqrt(kappa_i * (1.0 + kappa_i) / omega_i);
    params.p = mu_i * (1.0 + kappa_i) / omega_i;
    params.mu1 = 1.0 - mu_s;
    params.mu2 = mu_i;

    const InResult result = in_dispatch_ex(params, cfg);
    const double pref = closed_form_prefactor(kappa_i, mu_i, omega_i);
    return {pref * result.value, result.path != InPath::quadrature_fallback};
}

double outage_probability_numeric(const InterferenceScenario& scenario, double sir_db,
                                  double z, const EvalConfig& cfg) {
    cfg.validate();
    scenario.soi.validate();
    scenario.cci.validate();
    if (z < 0.0) throw domain_error("outage_probability_numeric: z must be nonnegative");
    if (z == 0.0) return 0.0;

    KappaMuParams soi = scenario.soi;
    soi.omega = std::pow(10.0, sir_db / 10.0);
    KappaMuParams cci = scenario.cci;
    cci.omega = 1.0;
    auto integrand = [&](double y) -> double {
        if (y <= 0.0) return 0.0;
        return kappa_mu_cdf(soi, z * y, cfg) * kappa_mu_pdf(cci, y, cfg);
    };
    const double upper = kappa_mu_upper_cutoff(cci);
    if (cci.mu >= 1.0) return quad_adaptive(integrand, 0.0, upper, cfg).value;
    // y = v^{1/mu} flattens the y^{mu-1} density factor at the origin.
    const double mu = cci.mu;
    auto transformed = [&](double v) -> double {
        if (v <= 0.0) return 0.0;
        const double y = std::pow(v, 1.0 / mu);
        return integrand(y) * (1.0 / mu) * std::pow(v, 1.0 / mu - 1.0);
    };
    return quad_adaptive(transformed, 0.0, std::pow(upper, mu), cfg).value;
}

double threshold_from_pf(double u, double pf, const EvalConfig& cfg) {
    cfg.validate();
    if (!(u > 0.0)) throw domain_error("threshold_from_pf: u must be positive");
    if (!(pf > 0.0 && pf < 1.0)) throw domain_error("threshold_from_pf: pf must be in (0, 1)");
    double lo = 0.0;
    double hi = 2.0 * (u + 1.0);
    for (int i = 0; i < 400 && upper_gamma_reg(u, 0.5 * hi, cfg) > pf; ++i) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (upper_gamma_reg(u, 0.5 * mid, cfg) > pf) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-13 * hi) break;
    }
    return 0.5 * (lo + hi);
}

double detection_probability_awgn(double u, double snr, double lambda, const EvalConfig& cfg) {
    cfg.validate();
    if (!(u > 0.0)) throw domain_error("detection_probability_awgn: u must be positive");
    if (snr < 0.0) throw domain_error("detection_probability_awgn: snr must be nonnegative");
    if (lambda < 0.0)
        throw domain_error("detection_probability_awgn: lambda must be nonnegative");
    return marcum_q(u, SignedSquareArg{2.0 * snr}, SignedSquareArg{lambda}, cfg);
}

TaggedProb detection_probability_kappa_mu(const DetectionParams& params, const EvalConfig& cfg) {
    cfg.validate();
    params.channel.validate();
    if (!(params.u > 0.0))
        throw domain_error("detection_probability_kappa_mu: u must be positive");
    if (params.lambda < 0.0)
        throw domain_error("detection_probability_kappa_mu: lambda must be nonnegative");
    if (params.lambda == 0.0) return {1.0, true};

    const double off = params.u - params.channel.mu;
    if (std::abs(off - std::round(off)) > 1e-9)
        return {detection_probability_numeric(params, cfg), false};

    const double kappa = params.channel.kappa;
    const double mu = params.channel.mu;
    const double omega = params.channel.omega;
    LaplaceParams lap;
    lap.a2 = SignedSquareArg{2.0};
    lap.b2 = SignedSquareArg{params.lambda};
    lap.c = 2.0 * mu * std::sqrt(kappa * (1.0 + kappa) / omega);
    lap.p = mu * (1.0 + kappa) / omega;
    lap.mu1 = params.u;
    lap.mu2 = mu;

    const InResult result = in_dispatch_ex(lap, cfg);
    const double pref = closed_form_prefactor(kappa, mu, omega);
    return {pref * result.value, result.path != InPath::quadrature_fallback};
}

double detection_probability_numeric(const DetectionParams& params, const EvalConfig& cfg) {
    cfg.validate();
    params.channel.validate();
    if (!(params.u > 0.0))
        throw domain_error("detection_probability_numeric: u must be positive");
    if (params.lambda < 0.0)
        throw domain_error("detection_probability_numeric: lambda must be nonnegative");
    if (params.lambda == 0.0) return 1.0;

    // Average the conditional detection probability over the normalized SNR
    // x = snr / omega, whose density has unit mean power.
    KappaMuParams unit = params.channel;
    unit.omega = 1.0;
    auto conditional = [&](double x) -> double {
        return marcum_q(params.u, SignedSquareArg{2.0 * params.channel.omega * x},
                        SignedSquareArg{params.lambda}, cfg) *
               kappa_mu_pdf(unit, x, cfg);
    };
    const double upper = kappa_mu_upper_cutoff(unit);
    if (unit.mu >= 1.0) {
        auto integrand = [&](double x) -> double {
            if (x <= 0.0) return 0.0;
            return conditional(x);
        };
        return quad_adaptive(integrand, 0.0, upper, cfg).value;
    }
    const double mu = unit.mu;
    auto transformed = [&](double v) -> double {
        if (v <= 0.0) return 0.0;
        const double x = std::pow(v, 1.0 / mu);
        return conditional(x) * (1.0 / mu) * std::pow(v, 1.0 / mu - 1.0);
    };
    return quad_adaptive(transformed, 0.0, std::pow(upper, mu), cfg).value;
}

}  // namespace humbertq
