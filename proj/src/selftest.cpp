#include "humbertq/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <vector>

#include "humbertq/fading.hpp"
#include "humbertq/hyp2var.hpp"
#include "humbertq/laplace.hpp"
#include "humbertq/marcum.hpp"
#include "humbertq/oracle.hpp"
#include "humbertq/parallel.hpp"
#include "humbertq/specfun.hpp"

namespace humbertq {

namespace {

constexpr std::uint64_t kSelftestSeed = 20260819ull;

void record(std::vector<CheckResult>& out, const std::string& name, double max_dev,
            double tol) {
    out.push_back({name, max_dev, tol, max_dev <= tol});
}

double rel_dev(double got, double want) {
    const double scale = std::max({std::abs(got), std::abs(want), 1e-300});
    return std::abs(got - want) / scale;
}

// The cross-check lattice for the product transform: every point the closed
// forms claim, minus offsets whose Marcum order falls outside the supported
// real-argument domain (non-integer mu1 <= -1).
std::vector<LaplaceParams> dispatch_grid() {
    std::vector<LaplaceParams> grid;
    for (double a2 : {0.25, 1.0, 4.0})
        for (double b2 : {0.25, 1.0, 4.0})
            for (double c : {0.5, 1.5, 3.0})
                for (double p : {0.5, 1.0, 2.0})
                    for (double mu2 : {0.5, 1.0, 2.0})
                        for (int n : {-2, -1, 0, 1, 2, 3}) {
                            const double mu1 = mu2 + n;
                            if (mu1 <= -1.0 && mu1 != std::round(mu1)) continue;
                            LaplaceParams prm;
                            prm.a2 = SignedSquareArg{a2};
                            prm.b2 = SignedSquareArg{b2};
                            prm.c = c;
                            prm.p = p;
                            prm.mu1 = mu1;
                            prm.mu2 = mu2;
                            grid.push_back(prm);
                        }
    return grid;
}

// Truncated Bessel-function expansion of phi3, an independent route used only
// as a cross-check target.
double phi3_bessel_expansion(double b, double g, double zz, double w, const EvalConfig& cfg) {
    const LnGamma lg = ln_gamma(g);
    const double root = std::sqrt(w);
    double poch_over_fact = 1.0;
    double total = 0.0;
    for (int j = 0; j < 400; ++j) {
        if (j > 0) poch_over_fact *= (b + j - 1) / j;
        const double term =
            poch_over_fact * std::pow(zz / root, j) * bessel_i(g + j - 1.0, 2.0 * root, cfg);
        total += term;
        if (j > 8 && std::abs(term) <= 1e-16 * std::abs(total)) break;
    }
    return lg.sign * std::exp(lg.log_abs) * std::pow(w, 0.5 * (1.0 - g)) * total;
}

// Numeric CDF by integrating the density, with the origin singularity for
// mu < 1 removed by the x = v^{1/mu} substitution.
double numeric_kappa_mu_cdf(const KappaMuParams& prm, double z, const EvalConfig& cfg) {
    if (z <= 0.0) return 0.0;
    if (prm.mu >= 1.0) {
        auto f = [&](double x) { return x <= 0.0 ? 0.0 : kappa_mu_pdf(prm, x, cfg); };
        return quad_adaptive(f, 0.0, z, cfg).value;
    }
    const double mu = prm.mu;
    auto f = [&](double v) -> double {
        if (v <= 0.0) return 0.0;
        const double x = std::pow(v, 1.0 / mu);
        return kappa_mu_pdf(prm, x, cfg) * (1.0 / mu) * std::pow(v, 1.0 / mu - 1.0);
    };
    return quad_adaptive(f, 0.0, std::pow(z, mu), cfg).value;
}

// Direct numeric transform of the swapped-argument Marcum product, used as an
// independent target for in_swapped.
double numeric_swapped(double a2, double b2, double c, double p, int mu1, int mu2,
                       const EvalConfig& cfg) {
    double upper = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double next =
            (45.0 + c * std::sqrt(upper) +
             std::max(0.5 * (mu2 - 1.0), 0.0) * std::log(std::max(upper, 2.0))) / p;
        if (std::abs(next - upper) < 1e-9 * next) {
            upper = next;
            break;
        }
        upper = next;
    }
    auto f = [&](double t) -> double {
        if (t <= 0.0) return 0.0;
        const double q = marcum_q(static_cast<double>(mu1), SignedSquareArg{a2},
                                  SignedSquareArg{b2 * t}, cfg);
        return std::exp(-p * t) * q * std::pow(t, 0.5 * (mu2 - 1.0)) *
               bessel_i(mu2 - 1.0, c * std::sqrt(t), cfg);
    };
    return quad_adaptive(f, 0.0, upper, cfg).value;
}

}  // namespace

std::vector<CheckResult> selftest_identities(const EvalConfig& cfg) {
    std::vector<CheckResult> out;

    {
        double dev = 0.0;
        for (double m : {-2.0, -1.0, 0.0, 1.0, 2.0, 3.0})
            for (double a2 : {0.25, 1.0, 4.0})
                for (double b2 : {0.25, 1.0, 4.0})
                    dev = std::max(dev, std::abs(marcum_q(m, SignedSquareArg{a2},
                                                          SignedSquareArg{b2}, cfg) +
                                                 marcum_q(1.0 - m, SignedSquareArg{b2},
                                                          SignedSquareArg{a2}, cfg) -
                                                 1.0));
        record(out, "marcum-reflection", dev, 1e-10);
    }
    {
        double dev = 0.0;
        for (double m : {0.5, 1.0, 2.3})
            for (int n : {1, 2, 4})
                for (double a2 : {0.5, 2.0})
                    for (double b2 : {0.5, 2.0})
                        dev = std::max(
                            dev, rel_dev(marcum_recurrence_rhs(m, n, SignedSquareArg{a2},
                                                               SignedSquareArg{b2}, cfg),
                                         marcum_q(m + n, SignedSquareArg{a2},
                                                  SignedSquareArg{b2}, cfg)));
        record(out, "marcum-recurrence", dev, 1e-10);
    }
    {
        double dev = 0.0;
        // The Phi3 form reproduces Q itself at integer orders and the
        // reflected complement 1 - Q_{1-M}(y,x) at any order.
        for (double m : {-2.0, -1.0, 0.0, 1.0})
            for (double a2 : {0.25, 1.0, 4.0})
                for (double b2 : {0.25, 1.0, 4.0})
                    dev = std::max(dev, std::abs(marcum_phi3_M_lt_2(m, a2, b2, cfg) -
                                                 marcum_q(m, SignedSquareArg{a2},
                                                          SignedSquareArg{b2}, cfg)));
        for (double m : {-0.5, 0.5, 1.5})
            for (double a2 : {0.25, 1.0, 4.0})
                for (double b2 : {0.25, 1.0, 4.0})
                    dev = std::max(dev,
                                   std::abs(marcum_phi3_M_lt_2(m, a2, b2, cfg) -
                                            (1.0 - marcum_q(1.0 - m, SignedSquareArg{b2},
                                                            SignedSquareArg{a2}, cfg))));
        record(out, "marcum-phi3-representation", dev, 1e-9);
    }
    {
        double dev = 0.0;
        for (double m : {-0.5, 0.3, 1.0, 1.7})
            for (double a2 : {0.25, 1.0, 4.0})
                for (double b2 : {0.25, 1.0, 4.0})
                    dev = std::max(dev, std::abs(one_minus_q_phi3(m, a2, b2, cfg) -
                                                 (1.0 - marcum_q(m, SignedSquareArg{a2},
                                                                 SignedSquareArg{b2}, cfg))));
        record(out, "one-minus-q-continuation", dev, 1e-9);
    }
    {
        double dev = 0.0;
        for (double m : {0.5, 2.0}) {
            double prev = 2.0;
            for (int i = 0; i <= 50; ++i) {
                const double b2 = 9.0 * i / 50.0;
                const double q =
                    marcum_q(m, SignedSquareArg{1.0}, SignedSquareArg{b2}, cfg);
                dev = std::max({dev, q - prev, -q, q - 1.0});
                prev = q;
            }
        }
        record(out, "marcum-range-monotonic", dev, 1e-12);
    }
    {
        double dev = 0.0;
        const double signed_vals[] = {-4.0, -2.0, -1.0, -0.5, -0.25};
        for (double m : {0.5, 1.0, 1.7, 3.0}) {
            for (double s1 : signed_vals)
                for (double s2 : signed_vals) {
                    const double v =
                        marcum_q(m, SignedSquareArg{s1}, SignedSquareArg{s2}, cfg);
                    if (!std::isfinite(v)) dev = 1.0;
                }
            for (double s : signed_vals) {
                const double v1 =
                    marcum_q(m, SignedSquareArg{s}, SignedSquareArg{1.5}, cfg);
                const double v2 =
                    marcum_q(m, SignedSquareArg{1.5}, SignedSquareArg{s}, cfg);
                if (!std::isfinite(v1) || !std::isfinite(v2)) dev = 1.0;
            }
        }
        record(out, "marcum-modified-finite", dev, 0.5);
    }
    {
        double dev = 0.0;
        for (double a : {0.5, 1.3, 2.7})
            for (double d : {0.5, 1.3, 2.7})
                for (double w : {0.2, 0.8, 1.5})
                    for (double z : {0.2, 0.8, 1.5})
                        dev = std::max(dev, rel_dev(psi2(a, d, a, w, z, cfg),
                                                    std::exp(w + z) *
                                                        phi3(d - a, d, -w, w * z, cfg)));
        record(out, "psi2-phi3-confluence", dev, 1e-9);
    }
    {
        const double cases[][4] = {
            {1.0, 2.5, 0.5, 1.2}, {2.5, 1.5, -0.4, 2.0}, {0.5, 0.7, 1.0, 0.3}};
        double dev = 0.0;
        for (const auto& cs : cases)
            dev = std::max(dev, rel_dev(phi3(cs[0], cs[1], cs[2], cs[3], cfg),
                                        phi3_bessel_expansion(cs[0], cs[1], cs[2], cs[3], cfg)));
        record(out, "phi3-bessel-expansion", dev, 1e-9);
    }
    {
        double dev = 0.0;
        for (int k : {1, 2, 3})
            for (double g : {0.5, 1.5, 2.0})
                for (double x : {0.0, 0.7})
                    for (double w : {0.9, 2.5})
                        dev = std::max(dev, rel_dev(phi3_reg_negint_b(k, g, x, w, cfg),
                                                    phi3_regularized(-k, g, x, w, cfg)));
        record(out, "phi3-negative-integer-b", dev, 1e-10);
    }
    {
        double dev = 0.0;
        for (double b : {0.5, 1.0, 2.5})
            for (double g : {0.7, 1.5, 3.2})
                for (double w : {-0.6, 0.4, 1.1})
                    for (double z : {0.3, 1.0})
                        dev = std::max(dev, rel_dev(phi3_regularized(b, g, w, z, cfg),
                                                    phi3(b, g, w, z, cfg) * rgamma(g)));
        record(out, "phi3-regularized-consistency", dev, 1e-10);
    }
    {
        const double cases[][4] = {{1.5, 1, 0.6, 0.4},
                                   {0.8, 2, 0.9, 1.1},
                                   {2.5, 3, 0.5, 0.7},
                                   {1.2, 2, 1.4, 0.3},
                                   {0.7, 2, 1.1, 0.5}};
        double dev = 0.0;
        for (const auto& cs : cases) {
            const double a = cs[0];
            const int n = static_cast<int>(cs[1]);
            dev = std::max(dev,
                           rel_dev(psi2_reg_via_marcum(a, n, cs[2], cs[3], cfg),
                                   psi2(a, a + n, a, cs[2], cs[3], cfg) * rgamma(a + n)));
        }
        record(out, "psi2-marcum-expansion", dev, 1e-8);
    }
    {
        const double cases[][4] = {{1.8, 2, 0.9, 0.3},
                                   {0.7, 1, 0.4, 0.6},
                                   {2.2, 3, 0.5, 1.0},
                                   {1.0, 0, 0.8, 0.5}};
        double dev = 0.0;
        for (const auto& cs : cases) {
            const double a = cs[0];
            const int n = static_cast<int>(cs[1]);
            dev = std::max(dev,
                           rel_dev(psi2_reg_bessel_sum(a, n, cs[2], cs[3], cfg),
                                   psi2(a + n, a, a + n, cs[2], cs[3], cfg) * rgamma(a)));
        }
        record(out, "psi2-bessel-reduction", dev, 1e-8);
    }
    {
        const double cases[][4] = {
            {1, 1.8, 0.7, 0.9}, {2, 2.4, 0.5, 1.1}, {3, 3.6, 1.2, 0.4}};
        double dev = 0.0;
        for (const auto& cs : cases) {
            const int b = static_cast<int>(cs[0]);
            dev = std::max(dev, rel_dev(phi3_via_marcum(b, cs[1], cs[2], cs[3], cfg),
                                        phi3(static_cast<double>(b), cs[1], cs[2], cs[3], cfg)));
        }
        record(out, "phi3-via-marcum", dev, 1e-8);
    }
    {
        // Laplace image of phi3(b; g; w t, z t): Gamma(g) (p-w)^{-b} p^{b-g} e^{z/p}.
        const double cases[][5] = {{1.0, 1.5, 0.3, 0.7, 2.0},
                                   {2.5, 2.0, -0.5, 1.2, 1.5},
                                   {0.7, 2.2, 0.9, 0.4, 3.0}};
        double dev = 0.0;
        for (const auto& cs : cases) {
            const double b = cs[0], g = cs[1], w = cs[2], z = cs[3], p = cs[4];
            double upper = 1.0;
            for (int i = 0; i < 200; ++i) {
                const double next = (45.0 + 2.0 * std::sqrt(std::max(z * upper, 0.0)) +
                                     std::max(g - 1.0, 0.0) * std::log(std::max(upper, 2.0))) /
                                    (p - std::max(w, 0.0));
                if (std::abs(next - upper) < 1e-9 * next) {
                    upper = next;
                    break;
                }
                upper = next;
            }
            auto f = [&](double t) -> double {
                if (t <= 0.0) return 0.0;
                return std::exp(-p * t) * std::pow(t, g - 1.0) * phi3(b, g, w * t, z * t, cfg);
            };
            const double numeric = quad_adaptive(f, 0.0, upper, cfg).value;
            const LnGamma lg = ln_gamma(g);
            const double closed = lg.sign * std::exp(lg.log_abs) * std::pow(p - w, -b) *
                                  std::pow(p, b - g) * std::exp(z / p);
            dev = std::max(dev, rel_dev(numeric, closed));
        }
        record(out, "phi3-laplace-image", dev, 1e-7);
    }
    return out;
}

std::vector<CheckResult> selftest_oracle(const EvalConfig& cfg) {
    std::vector<CheckResult> out;

    {
        const auto grid = dispatch_grid();
        const auto devs = map_indexed(grid.size(), [&](std::size_t i) -> double {
            try {
                const double closed = in_dispatch(grid[i], cfg);
                const double oracle = quad_in(grid[i], cfg).value;
                return rel_dev(closed, oracle);
            } catch (const std::exception&) {
                return 1.0;
            }
        });
        record(out, "dispatch-grid-vs-quadrature",
               *std::max_element(devs.begin(), devs.end()), 1e-6);
    }
    {
        std::vector<LaplaceParams> pts;
        for (double a2 : {0.25, 1.0, 4.0})
            for (double b2 : {0.25, 1.0, 4.0})
                for (double c : {0.5, 1.5, 3.0})
                    for (double p : {0.5, 1.0, 2.0})
                        for (double mu2 : {0.5, 1.0, 2.0})
                            for (int n : {1, 2, 3}) {
                                LaplaceParams prm;
                                prm.a2 = SignedSquareArg{a2};
                                prm.b2 = SignedSquareArg{b2};
                                prm.c = c;
                                prm.p = p;
                                prm.mu1 = mu2 + n;
                                prm.mu2 = mu2;
                                pts.push_back(prm);
                            }
        const auto devs = map_indexed(pts.size(), [&](std::size_t i) -> double {
            try {
                return rel_dev(in_plus_n_marcum(pts[i], cfg),
                               in_plus_n_quadrature(pts[i], cfg));
            } catch (const std::exception&) {
                return 1.0;
            }
        });
        record(out, "raised-order-route-agreement",
               *std::max_element(devs.begin(), devs.end()), 1e-8);
    }
    {
        double dev = 0.0;
        for (double m : {0.5, 1.0, 2.3, 2.7})
            for (double a2 : {0.5, 1.4, 4.0})
                for (double b2 : {0.25, 2.2, 4.0})
                    dev = std::max(dev, rel_dev(marcum_q(m, SignedSquareArg{a2},
                                                         SignedSquareArg{b2}, cfg),
                                                quad_marcum(m, a2, b2, cfg).value));
        record(out, "marcum-vs-quadrature", dev, 1e-8);
    }
    {
        double dev = 0.0;
        for (double mu : {0.5, 1.0, 2.5})
            for (double c : {0.5, 1.3, 2.0})
                for (double p : {0.7, 1.0, 2.0}) {
                    LaplaceParams prm;
                    prm.a2 = SignedSquareArg{1.0};
                    prm.b2 = SignedSquareArg{0.0};
                    prm.c = c;
                    prm.p = p;
                    prm.mu1 = mu;
                    prm.mu2 = mu;
                    dev = std::max(dev, rel_dev(quad_in(prm, cfg).value,
                                                laplace_bessel_power(mu, c, p)));
                }
        record(out, "bessel-power-transform-vs-quadrature", dev, 1e-9);
    }
    {
        const double cases[][6] = {{1.0, 1.0, 1.0, 1.0, 2, 2},
                                   {1.5, 0.8, 1.2, 1.3, 1, 2},
                                   {0.7, 2.0, 0.9, 1.1, 3, 1}};
        double dev = 0.0;
        for (const auto& cs : cases) {
            const int m1 = static_cast<int>(cs[4]);
            const int m2 = static_cast<int>(cs[5]);
            dev = std::max(dev, rel_dev(in_swapped(cs[0], cs[1], cs[2], cs[3], m1, m2, cfg),
                                        numeric_swapped(cs[0], cs[1], cs[2], cs[3], m1, m2, cfg)));
        }
        record(out, "swapped-marcum-transform-vs-quadrature", dev, 1e-7);
    }
    {
        double dev = 0.0;
        for (double kappa : {0.5, 1.5, 3.0})
            for (double mu : {0.5, 1.0, 2.5})
                for (double z : {0.5, 1.0, 2.0}) {
                    KappaMuParams prm{kappa, mu, 1.3};
                    dev = std::max(dev, rel_dev(kappa_mu_cdf(prm, z, cfg),
                                                numeric_kappa_mu_cdf(prm, z, cfg)));
                }
        record(out, "distribution-cdf-vs-density-integral", dev, 1e-8);
    }
    {
        double dev = 0.0;
        for (double kappa : {0.5, 1.5, 3.0})
            for (double mu : {0.5, 1.0, 2.5}) {
                KappaMuParams prm{kappa, mu, 1.3};
                const double big = 40.0 * prm.omega;
                dev = std::max(dev, std::abs(numeric_kappa_mu_cdf(prm, big, cfg) - 1.0));
            }
        record(out, "density-normalization", dev, 1e-8);
    }
    {
        double dev = 0.0;
        for (double m : {1.0, 2.0, 3.0})
            for (double z : {0.5, 1.0, 2.0}) {
                KappaMuParams prm{1e-9, m, 1.3};
                dev = std::max(dev, std::abs(kappa_mu_cdf(prm, z, cfg) -
                                             lower_gamma_reg(m, m * z / prm.omega, cfg)));
            }
        record(out, "nakagami-reduction", dev, 1e-6);
    }
    {
        double dev = 0.0;
        for (double kappa : {0.5, 2.0})
            for (double z : {0.5, 1.0, 2.0}) {
                KappaMuParams prm{kappa, 1.0, 1.0};
                const double direct =
                    1.0 - marcum_q(1.0, SignedSquareArg{2.0 * kappa},
                                   SignedSquareArg{2.0 * (1.0 + kappa) * z}, cfg);
                dev = std::max(dev, std::abs(kappa_mu_cdf(prm, z, cfg) - direct));
            }
        record(out, "rice-reduction", dev, 1e-6);
    }
    {
        double dev = 0.0;
        const double lambda = threshold_from_pf(2.5, 0.1, cfg);
        for (double kappa : {0.5, 4.2})
            for (int db = -10; db <= 20; db += 5) {
                DetectionParams det;
                det.u = 2.5;
                det.lambda = lambda;
                det.channel = KappaMuParams{kappa, 0.5, std::pow(10.0, db / 10.0)};
                const TaggedProb closed = detection_probability_kappa_mu(det, cfg);
                if (!closed.closed_form) {
                    dev = 1.0;
                    continue;
                }
                dev = std::max(dev, rel_dev(closed.value,
                                            detection_probability_numeric(det, cfg)));
            }
        record(out, "detection-closed-vs-numeric", dev, 1e-6);
    }
    {
        const double lambda = threshold_from_pf(2.5, 0.1, cfg);
        DetectionParams det;
        det.u = 2.5;
        det.lambda = lambda;
        det.channel = KappaMuParams{0.5, 0.5, 1e-8};
        const double pd = detection_probability_kappa_mu(det, cfg).value;
        record(out, "detection-false-alarm-limit", std::abs(pd - 0.1), 1e-4);
    }
    {
        double dev = std::abs(threshold_from_pf(1.0, 0.1, cfg) + 2.0 * std::log(0.1));
        for (double u : {1.0, 2.5, 5.0})
            for (double pf : {0.5, 0.1, 0.01}) {
                const double lambda = threshold_from_pf(u, pf, cfg);
                dev = std::max(dev, std::abs(upper_gamma_reg(u, 0.5 * lambda, cfg) - pf));
            }
        record(out, "threshold-roundtrip", dev, 1e-9);
    }
    {
        double dev = 0.0;
        for (double kappa_s : {0.5, 2.5})
            for (int sir : {0, 10, 20}) {
                InterferenceScenario sc;
                sc.soi = KappaMuParams{kappa_s, 2.0, 1.0};
                sc.cci = KappaMuParams{0.5, 2.0, 1.0};
                const TaggedProb closed = outage_probability(sc, sir, 1.0, cfg);
                dev = std::max(dev, rel_dev(closed.value,
                                            outage_probability_numeric(sc, sir, 1.0, cfg)));
            }
        record(out, "outage-closed-vs-numeric", dev, 1e-6);
    }
    {
        // Reported error estimates must bound the move seen under a tighter tolerance.
        double dev = 0.0;
        for (double a2 : {0.25, 4.0})
            for (double mu2 : {0.5, 2.0}) {
                LaplaceParams prm;
                prm.a2 = SignedSquareArg{a2};
                prm.b2 = SignedSquareArg{1.0};
                prm.c = 1.5;
                prm.p = 1.0;
                prm.mu1 = mu2 + 1.0;
                prm.mu2 = mu2;
                const QuadResult loose = quad_in(prm, cfg);
                EvalConfig tight = cfg;
                tight.quad_abs_tol = 0.5 * cfg.quad_abs_tol;
                const QuadResult better = quad_in(prm, tight);
                dev = std::max(dev, std::abs(loose.value - better.value) -
                                        (loose.abs_err_estimate + 1e-15));
            }
        record(out, "quadrature-error-estimate-honesty", std::max(dev, 0.0), 1e-15);
    }
    return out;
}

std::vector<CheckResult> selftest_montecarlo(const EvalConfig& cfg) {
    std::vector<CheckResult> out;

    {
        const KappaMuParams prm{0.5, 2.0, 1.7};
        const std::size_t n = 400000;
        const auto xs = sample_kappa_mu(prm, n, kSelftestSeed);
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        var /= static_cast<double>(n - 1);
        const double se = std::sqrt(var / static_cast<double>(n));
        record(out, "sampler-mean", std::abs(mean - prm.omega) / se, 4.0);
    }
    {
        const KappaMuParams prm{1.5, 3.0, 0.8};
        const std::size_t n = 100000;
        const auto a = sample_kappa_mu(prm, n, kSelftestSeed);
        const auto b = sample_kappa_mu(prm, n, kSelftestSeed);
        const auto c = sample_kappa_mu_serial(prm, n, kSelftestSeed);
        double mismatches = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (a[i] != b[i] || a[i] != c[i]) mismatches += 1.0;
        record(out, "sampler-determinism", mismatches, 0.0);
    }
    {
        const KappaMuParams prm{2.5, 2.0, 1.0};
        const std::size_t n = 200000;
        auto xs = sample_kappa_mu(prm, n, kSelftestSeed + 7);
        std::sort(xs.begin(), xs.end());
        double gap = 0.0;
        for (int i = 0; i <= 20; ++i) {
            const double z = 0.1 + 2.9 * i / 20.0;
            const double empirical =
                static_cast<double>(std::lower_bound(xs.begin(), xs.end(), z) - xs.begin()) /
                static_cast<double>(n);
            gap = std::max(gap, std::abs(empirical - kappa_mu_cdf(prm, z, cfg)));
        }
        const double dkw = std::sqrt(std::log(2.0 / 0.001) / (2.0 * static_cast<double>(n)));
        record(out, "sampler-distribution", gap, dkw);
    }
    {
        const std::size_t n = 1000000;
        double worst_sigma = 0.0;
        double order_violation = 0.0;
        double monotone_violation = 0.0;
        std::vector<double> closed_by_kappa[2];
        std::vector<double> mc_by_kappa[2];
        int kappa_idx = 0;
        for (double kappa_s : {0.5, 2.5}) {
            double prev_closed = 2.0;
            int point = 0;
            for (int sir : {0, 5, 10, 15, 20}) {
                InterferenceScenario sc;
                sc.soi = KappaMuParams{kappa_s, 2.0, 1.0};
                sc.cci = KappaMuParams{0.5, 2.0, 1.0};
                const double closed = outage_probability(sc, sir, 1.0, cfg).value;

                KappaMuParams soi = sc.soi;
                soi.omega = std::pow(10.0, sir / 10.0);
                const std::uint64_t base =
                    kSelftestSeed + 1000 * static_cast<std::uint64_t>(kappa_idx) +
                    2 * static_cast<std::uint64_t>(point);
                const auto s = sample_kappa_mu(soi, n, base);
                const auto i = sample_kappa_mu(sc.cci, n, base + 1);
                double hits = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    if (s[k] < i[k]) hits += 1.0;
                const double estimate = hits / static_cast<double>(n);
                const double se = std::max(
                    std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(n)), 1e-12);
                worst_sigma = std::max(worst_sigma, std::abs(closed - estimate) / se);
                monotone_violation = std::max(monotone_violation, closed - prev_closed);
                prev_closed = closed;
                closed_by_kappa[kappa_idx].push_back(closed);
                mc_by_kappa[kappa_idx].push_back(estimate);
                ++point;
            }
            ++kappa_idx;
        }
        for (std::size_t i = 0; i < closed_by_kappa[0].size(); ++i) {
            order_violation = std::max(order_violation,
                                       closed_by_kappa[1][i] - closed_by_kappa[0][i]);
            order_violation =
                std::max(order_violation, mc_by_kappa[1][i] - mc_by_kappa[0][i]);
        }
        record(out, "outage-vs-monte-carlo", worst_sigma, 3.0);
        record(out, "outage-monotone-in-sir", monotone_violation, 0.0);
        record(out, "outage-kappa-ordering", order_violation, 0.0);
    }
    return out;
}

int run_selftest(const std::string& suite, const EvalConfig& cfg, std::ostream& os) {
    std::vector<CheckResult> results;
    bool known = false;
    const bool all = suite == "all";
    if (all || suite == "identities") {
        known = true;
        auto part = selftest_identities(cfg);
        results.insert(results.end(), part.begin(), part.end());
    }
    if (all || suite == "oracle") {
        known = true;
        auto part = selftest_oracle(cfg);
        results.insert(results.end(), part.begin(), part.end());
    }
    if (all || suite == "montecarlo") {
        known = true;
        auto part = selftest_montecarlo(cfg);
        results.insert(results.end(), part.begin(), part.end());
    }
    if (!known) {
        os << "unknown suite '" << suite
           << "' (expected identities, oracle, montecarlo, or all)\n";
        return 1;
    }
    int failures = 0;
    for (const auto& r : results) {
        os << (r.pass ? "ok   " : "FAIL ") << r.name << "  max_dev=" << std::scientific
           << std::setprecision(3) << r.max_dev << "  tol=" << r.tol << "\n";
        if (!r.pass) ++failures;
    }
    if (failures == 0) {
        os << "all " << results.size() << " checks passed\n";
    } else {
        os << failures << " of " << results.size() << " checks failed\n";
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace humbertq
