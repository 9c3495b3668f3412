// End-to-end acceptance checks: one [PASS]/[FAIL] line per criterion.
// Exit status is the number of failed criteria.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "humbertq/fading.hpp"
#include "humbertq/hyp2var.hpp"
#include "humbertq/laplace.hpp"
#include "humbertq/marcum.hpp"
#include "humbertq/oracle.hpp"
#include "humbertq/specfun.hpp"

using namespace humbertq;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kSeed = 20260819ull;

double rel_dev(double got, double want) {
    return std::abs(got - want) /
           std::max({std::abs(got), std::abs(want), 1e-300});
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

LaplaceParams make(double a2, double b2, double c, double p, double mu1,
                   double mu2) {
    LaplaceParams prm;
    prm.a2 = SignedSquareArg{a2};
    prm.b2 = SignedSquareArg{b2};
    prm.c = c;
    prm.p = p;
    prm.mu1 = mu1;
    prm.mu2 = mu2;
    return prm;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

struct Outcome {
    bool pass;
    std::string detail;
};

// 1. Every dispatch route agrees with direct quadrature of the defining
//    integral over the full parameter lattice, within 1e-6 relative and
//    within a five-minute budget.
Outcome criterion_dispatch_grid(const EvalConfig& cfg) {
    const auto t0 = Clock::now();
    double worst = 0.0;
    int count = 0;
    for (const double a2 : {0.25, 1.0, 4.0})
        for (const double b2 : {0.25, 1.0, 4.0})
            for (const double c : {0.5, 1.5, 3.0})
                for (const double p : {0.5, 1.0, 2.0})
                    for (const double mu2 : {0.5, 1.0, 2.0})
                        for (int n = -2; n <= 3; ++n) {
                            const double mu1 = mu2 + n;
                            if (mu1 <= -1.0 && mu1 != std::round(mu1)) continue;
                            const LaplaceParams prm = make(a2, b2, c, p, mu1, mu2);
                            const double closed = in_dispatch(prm, cfg);
                            const double oracle = quad_in(prm, cfg).value;
                            worst = std::max(worst, rel_dev(closed, oracle));
                            ++count;
                        }
    const double elapsed = seconds_since(t0);
    const bool pass = worst <= 1e-6 && count == 1377 && elapsed <= 300.0;
    return {pass, std::to_string(count) + " points, worst rel dev " + fmt(worst) +
                      ", " + fmt(elapsed) + " s"};
}

// 2. The two independent raised-order routes (finite Marcum-term sum and
//    finite proper-integral sum) agree to 1e-8.
Outcome criterion_raised_order_routes(const EvalConfig& cfg) {
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n)
        for (const double mu2 : {0.5, 1.0, 2.0})
            for (const double a2 : {0.25, 4.0})
                for (const double b2 : {0.25, 4.0})
                    for (const double c : {0.5, 3.0})
                        for (const double p : {0.5, 2.0}) {
                            const LaplaceParams prm = make(a2, b2, c, p, mu2 + n, mu2);
                            worst = std::max(
                                worst, rel_dev(in_plus_n_marcum(prm, cfg),
                                               in_plus_n_quadrature(prm, cfg)));
                        }
    return {worst <= 1e-8, "144 points, worst rel dev " + fmt(worst)};
}

// 3. Marcum identities: reflection, order recurrence, the two Phi3
//    representations, and agreement with the defining-integral oracle.
Outcome criterion_marcum_identities(const EvalConfig& cfg) {
    double worst_abs = 0.0;
    for (const double order : {-2.0, 0.0, 3.0})
        for (const double a2 : {0.5, 2.0})
            for (const double b2 : {0.5, 2.0})
                worst_abs = std::max(
                    worst_abs,
                    std::abs(marcum_q(order, a2, b2, cfg) -
                             (1.0 - marcum_q(1.0 - order, b2, a2, cfg))));
    for (const double order : {0.7, 1.5})
        for (const int n : {1, 3})
            for (const auto& ab : {std::pair{1.2, 0.8}, std::pair{2.0, 3.0}})
                worst_abs = std::max(
                    worst_abs,
                    std::abs(marcum_recurrence_rhs(order, n, ab.first, ab.second, cfg) -
                             marcum_q(order + n, ab.first, ab.second, cfg)));
    for (const double order : {-2.0, -1.0, 0.0, 1.0})
        for (const auto& ab : {std::pair{1.3, 0.9}, std::pair{2.0, 3.0}})
            worst_abs = std::max(
                worst_abs,
                std::abs(marcum_phi3_M_lt_2(order, ab.first, ab.second, cfg) -
                         marcum_q(order, ab.first, ab.second, cfg)));
    for (const double order : {-0.5, 0.5, 1.5})
        for (const auto& ab : {std::pair{1.3, 0.9}, std::pair{2.0, 3.0}})
            worst_abs = std::max(
                worst_abs,
                std::abs(marcum_phi3_M_lt_2(order, ab.first, ab.second, cfg) -
                         (1.0 - marcum_q(1.0 - order, ab.second, ab.first, cfg))));
    for (const double order : {0.3, 1.0, 1.7})
        for (const auto& ab : {std::pair{1.3, 0.9}, std::pair{2.0, 3.0}})
            worst_abs = std::max(
                worst_abs,
                std::abs(one_minus_q_phi3(order, ab.first, ab.second, cfg) -
                         (1.0 - marcum_q(order, ab.first, ab.second, cfg))));

    double worst_rel = 0.0;
    for (const auto& mab : {std::tuple{1.5, 0.7, 2.2}, std::tuple{2.5, 2.0, 3.0},
                            std::tuple{0.5, 1.0, 1.0}, std::tuple{3.0, 4.0, 2.0}}) {
        const auto [m, a2, b2] = mab;
        worst_rel = std::max(worst_rel,
                             rel_dev(marcum_q(m, a2, b2, cfg),
                                     quad_marcum(m, a2, b2, cfg).value));
    }
    for (const auto& ab : {std::pair{1.3, 0.9}, std::pair{2.0, 3.0}}) {
        worst_rel = std::max(
            worst_rel, rel_dev(marcum_phi3_M_lt_2(1.0, ab.first, ab.second, cfg),
                               quad_marcum(1.0, ab.first, ab.second, cfg).value));
        worst_rel = std::max(
            worst_rel,
            rel_dev(one_minus_q_phi3(1.7, ab.first, ab.second, cfg),
                    1.0 - quad_marcum(1.7, ab.first, ab.second, cfg).value));
    }
    const bool pass = worst_abs <= 1e-9 && worst_rel <= 1e-8;
    return {pass, "worst identity dev " + fmt(worst_abs) +
                      ", worst vs quadrature " + fmt(worst_rel)};
}

// 4. Two-variable hypergeometric identities: the Psi2/Phi3 confluence, Bessel
//    expansion, negative-integer-parameter reduction, both regularized-Psi2
//    reductions, and the Phi3 Laplace image.
Outcome criterion_hyp2var_identities(const EvalConfig& cfg) {
    double worst = 0.0;
    for (const auto& adwz :
         {std::tuple{0.8, 1.7, 0.5, 1.2}, std::tuple{1.5, 2.5, 0.6, 0.4},
          std::tuple{0.7, 2.2, 0.3, 0.9}}) {
        const auto [a, d, w, z] = adwz;
        worst = std::max(
            worst, rel_dev(psi2(a, d, a, w, z, cfg),
                           std::exp(w + z) * phi3(d - a, d, -w, w * z, cfg)));
    }

    for (const auto& bgxw :
         {std::tuple{1.0, 2.5, 0.6, 0.9}, std::tuple{2.0, 2.2, 0.5, 0.3},
          std::tuple{0.7, 1.8, 0.4, 1.1}}) {
        const auto [b, g, x, w] = bgxw;
        const double root_w = std::sqrt(w);
        double sum = 0.0, poch = 1.0, fact = 1.0, ratio = 1.0;
        int small_run = 0;
        for (int j = 0; j < 300; ++j) {
            if (j > 0) {
                poch *= b + (j - 1);
                fact *= j;
                ratio *= x / root_w;
            }
            const double term =
                poch / fact * ratio * bessel_i(g + j - 1.0, 2.0 * root_w, cfg);
            sum += term;
            if (std::abs(term) <= 1e-15 * std::abs(sum)) {
                if (++small_run >= 2) break;
            } else {
                small_run = 0;
            }
        }
        const double expansion = std::exp(ln_gamma(g).log_abs) *
                                 std::pow(w, 0.5 * (1.0 - g)) * sum;
        worst = std::max(worst, rel_dev(phi3(b, g, x, w, cfg), expansion));
    }

    for (const int k : {1, 2, 3})
        for (const double g : {0.5, 1.5})
            for (const double w : {0.9, 2.5})
                worst = std::max(
                    worst, rel_dev(phi3_reg_negint_b(k, g, 0.7, w, cfg),
                                   phi3_regularized(-k, g, 0.7, w, cfg)));

    for (const auto& anwz :
         {std::tuple{0.7, 2, 1.1, 0.5}, std::tuple{1.2, 1, 0.8, 0.9},
          std::tuple{0.5, 3, 0.6, 0.4}}) {
        const auto [a, n, w, z] = anwz;
        worst = std::max(worst,
                         rel_dev(psi2_reg_via_marcum(a, n, w, z, cfg),
                                 psi2(a, a + n, a, w, z, cfg) * rgamma(a + n)));
    }
    for (const auto& anwz :
         {std::tuple{1.8, 2, 0.9, 0.3}, std::tuple{0.9, 1, 0.5, 0.7},
          std::tuple{1.3, 0, 0.7, 0.9}}) {
        const auto [a, n, w, z] = anwz;
        worst = std::max(worst,
                         rel_dev(psi2_reg_bessel_sum(a, n, w, z, cfg),
                                 psi2(a + n, a, a + n, w, z, cfg) * rgamma(a)));
    }

    double worst_image = 0.0;
    for (const auto& case5 :
         {std::tuple{1.0, 1.5, 0.3, 0.7, 2.0}, std::tuple{2.5, 2.0, -0.5, 1.2, 1.5},
          std::tuple{0.7, 2.2, 0.9, 0.4, 3.0}}) {
        const auto [b, g, w, z, p] = case5;
        double upper = 2.0;
        for (int i = 0; i < 200; ++i) {
            const double next =
                (50.0 + 2.0 * std::sqrt(std::max(z * upper, 0.0)) +
                 std::abs(g - 1.0) * std::log(std::max(upper, 2.0))) /
                (p - std::max(w, 0.0));
            if (std::abs(next - upper) < 1e-9 * next) break;
            upper = next;
        }
        const double image =
            quad_adaptive(
                [&, b = b, g = g, w = w, z = z, p = p](double t) {
                    if (t <= 0.0) return 0.0;
                    return std::exp(-p * t) * std::pow(t, g - 1.0) *
                           phi3(b, g, w * t, z * t, cfg);
                },
                0.0, upper, cfg)
                .value;
        const double closed = std::exp(ln_gamma(g).log_abs) *
                              std::pow(p - w, -b) * std::pow(p, b - g) *
                              std::exp(z / p);
        worst_image = std::max(worst_image, rel_dev(image, closed));
    }
    const bool pass = worst <= 1e-8 && worst_image <= 1e-7;
    return {pass, "worst series identity dev " + fmt(worst) +
                      ", worst Laplace image dev " + fmt(worst_image)};
}

// 5. Distribution layer: the closed-form distribution function matches the
//    integrated density, normalizes to one, and reduces to the Nakagami-m
//    and Rice special cases.
Outcome criterion_distribution_layer(const EvalConfig& cfg) {
    const double omega = 1.3;
    double worst = 0.0;
    for (const double kappa : {0.5, 3.0})
        for (const double mu : {1.0, 2.5}) {
            const KappaMuParams prm{kappa, mu, omega};
            for (const double z : {0.5, 1.5}) {
                const double numeric =
                    quad_adaptive(
                        [&](double x) {
                            return x <= 0.0 ? 0.0 : kappa_mu_pdf(prm, x, cfg);
                        },
                        0.0, z, cfg)
                        .value;
                worst = std::max(worst, rel_dev(kappa_mu_cdf(prm, z, cfg), numeric));
            }
        }

    double worst_norm = 0.0;
    for (const double kappa : {0.5, 3.0})
        for (const double mu : {1.0, 2.5}) {
            const KappaMuParams prm{kappa, mu, omega};
            const double total =
                quad_adaptive(
                    [&](double x) {
                        return x <= 0.0 ? 0.0 : kappa_mu_pdf(prm, x, cfg);
                    },
                    0.0, 40.0 * omega, cfg)
                    .value;
            worst_norm = std::max(worst_norm, std::abs(total - 1.0));
        }

    double worst_special = 0.0;
    for (const int m : {1, 2, 3}) {
        const KappaMuParams nak{1e-9, static_cast<double>(m), omega};
        for (const double z : {0.5 * omega, omega, 2.0 * omega})
            worst_special = std::max(
                worst_special,
                std::abs(kappa_mu_cdf(nak, z, cfg) -
                         lower_gamma_reg(m, m * z / omega, cfg)));
    }
    for (const double kappa : {0.5, 2.0}) {
        const KappaMuParams rice{kappa, 1.0, omega};
        for (const double z : {0.5 * omega, omega, 2.0 * omega})
            worst_special = std::max(
                worst_special,
                std::abs(kappa_mu_cdf(rice, z, cfg) -
                         (1.0 - marcum_q(1.0, 2.0 * kappa,
                                         2.0 * (1.0 + kappa) * z / omega, cfg))));
    }
    const bool pass = worst <= 1e-8 && worst_norm <= 1e-8 && worst_special <= 1e-6;
    return {pass, "worst cdf dev " + fmt(worst) + ", normalization dev " +
                      fmt(worst_norm) + ", special-case dev " + fmt(worst_special)};
}

// 6. Closed-form outage vs paired-stream Monte Carlo (fixed seeds): within
//    three standard errors at a million samples per point, monotone in SIR,
//    and ordered in the signal kappa.
Outcome criterion_outage_monte_carlo(const EvalConfig& cfg) {
    const std::size_t n = 1000000;
    double worst_sigma = 0.0;
    double monotone_violation = 0.0;
    double order_violation = 0.0;
    std::vector<double> closed_curve[2], mc_curve[2];
    int kappa_idx = 0;
    for (const double kappa_s : {0.5, 2.5}) {
        double prev_closed = 1.0;
        int point = 0;
        for (const int sir : {0, 5, 10, 15, 20}) {
            InterferenceScenario sc;
            sc.soi = KappaMuParams{kappa_s, 2.0, 1.0};
            sc.cci = KappaMuParams{0.5, 2.0, 1.0};
            const double closed = outage_probability(sc, sir, 1.0, cfg).value;

            KappaMuParams soi = sc.soi;
            soi.omega = std::pow(10.0, sir / 10.0);
            const std::uint64_t base =
                kSeed + 1000 * static_cast<std::uint64_t>(kappa_idx) +
                2 * static_cast<std::uint64_t>(point);
            const auto s = sample_kappa_mu(soi, n, base);
            const auto i = sample_kappa_mu(sc.cci, n, base + 1);
            double hits = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                if (s[k] < i[k]) hits += 1.0;
            const double estimate = hits / static_cast<double>(n);
            const double se = std::sqrt(
                std::max(estimate * (1.0 - estimate), 1e-12) / static_cast<double>(n));
            worst_sigma = std::max(worst_sigma, std::abs(closed - estimate) / se);

            monotone_violation = std::max(monotone_violation, closed - prev_closed);
            prev_closed = closed;
            closed_curve[kappa_idx].push_back(closed);
            mc_curve[kappa_idx].push_back(estimate);
            ++point;
        }
        ++kappa_idx;
    }
    for (std::size_t i = 0; i < closed_curve[0].size(); ++i) {
        order_violation = std::max(order_violation,
                                   closed_curve[1][i] - closed_curve[0][i]);
        order_violation =
            std::max(order_violation, mc_curve[1][i] - mc_curve[0][i]);
    }
    const bool pass = worst_sigma <= 3.0 && monotone_violation <= 0.0 &&
                      order_violation <= 0.0;
    return {pass, "worst |closed-MC| " + fmt(worst_sigma) +
                      " standard errors; monotone violation " +
                      fmt(monotone_violation) + "; ordering violation " +
                      fmt(order_violation)};
}

// 7. Energy detection: the closed-form fading average matches direct
//    quadrature, collapses to the false-alarm probability as the mean SNR
//    vanishes, and the threshold solver hits the analytic special case.
Outcome criterion_detection(const EvalConfig& cfg) {
    const double lambda = threshold_from_pf(2.5, 0.1, cfg);
    double worst = 0.0;
    bool all_closed = true;
    for (const double kappa : {0.5, 4.2})
        for (int db = -10; db <= 20; db += 5) {
            DetectionParams det;
            det.u = 2.5;
            det.lambda = lambda;
            det.channel = KappaMuParams{kappa, 0.5, std::pow(10.0, db / 10.0)};
            const TaggedProb closed = detection_probability_kappa_mu(det, cfg);
            all_closed = all_closed && closed.closed_form;
            worst = std::max(worst, rel_dev(closed.value,
                                            detection_probability_numeric(det, cfg)));
        }

    DetectionParams limit;
    limit.u = 2.5;
    limit.lambda = lambda;
    limit.channel = KappaMuParams{0.5, 0.5, 1e-8};
    const double limit_dev =
        std::abs(detection_probability_kappa_mu(limit, cfg).value - 0.1);

    const double threshold_dev =
        std::abs(threshold_from_pf(1.0, 0.1, cfg) + 2.0 * std::log(0.1));

    const bool pass =
        worst <= 1e-6 && all_closed && limit_dev <= 1e-4 && threshold_dev <= 1e-9;
    return {pass, "worst closed-vs-numeric dev " + fmt(worst) +
                      ", false-alarm-limit dev " + fmt(limit_dev) +
                      ", threshold dev " + fmt(threshold_dev)};
}

// 8. Imaginary-argument (signed-square) domain: finite real values across the
//    lattice, pinned to the series layer through the regularized-Psi2 route.
Outcome criterion_signed_squares(const EvalConfig& cfg) {
    bool all_finite = true;
    for (const double order : {0.5, 1.0, 1.7, 3.0}) {
        for (const double sa : {-4.0, -2.0, -1.0, -0.5, -0.25})
            for (const double sb : {-4.0, -2.0, -1.0, -0.5, -0.25})
                all_finite = all_finite &&
                             std::isfinite(marcum_q(order, sa, sb, cfg));
        all_finite = all_finite && std::isfinite(marcum_q(order, -1.5, 1.5, cfg));
        all_finite = all_finite && std::isfinite(marcum_q(order, 1.5, -1.5, cfg));
    }
    const double pinned = rel_dev(marcum_q(1.5, -0.8, -1.2, cfg),
                                  0.16305003385291844);
    const double series_tie =
        rel_dev(psi2_reg_via_marcum(0.7, 2, 1.1, 0.5, cfg),
                psi2(0.7, 2.7, 0.7, 1.1, 0.5, cfg) * rgamma(2.7));
    const bool pass = all_finite && pinned <= 1e-9 && series_tie <= 1e-8;
    return {pass, std::string(all_finite ? "all finite" : "non-finite value") +
                      ", pinned-value dev " + fmt(pinned) + ", series-tie dev " +
                      fmt(series_tie)};
}

// 9. The command-line self test (all three suites) exits cleanly within its
//    ten-minute budget.
Outcome criterion_cli_selftest(const EvalConfig&) {
    const auto t0 = Clock::now();
    const std::string cmd = std::string("\"") + HUMBERTQ_CLI_PATH + "\" selftest all";
    const int status = std::system(cmd.c_str());
    const double elapsed = seconds_since(t0);
    const bool exited_zero =
        status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0;
    const bool pass = exited_zero && elapsed <= 600.0;
    return {pass, std::string("exit ") +
                      (exited_zero ? "0" : std::to_string(status)) + ", " +
                      fmt(elapsed) + " s"};
}

}  // namespace

int main() {
    const EvalConfig cfg;
    struct Entry {
        const char* what;
        Outcome (*run)(const EvalConfig&);
    };
    const Entry entries[] = {
        {"closed forms match quadrature on the full dispatch grid",
         criterion_dispatch_grid},
        {"raised-order routes agree", criterion_raised_order_routes},
        {"Marcum identities hold", criterion_marcum_identities},
        {"two-variable hypergeometric identities hold",
         criterion_hyp2var_identities},
        {"distribution layer is consistent", criterion_distribution_layer},
        {"outage closed form matches Monte Carlo", criterion_outage_monte_carlo},
        {"detection closed form matches quadrature and limits",
         criterion_detection},
        {"signed-square domain is finite and pinned to the series layer",
         criterion_signed_squares},
        {"command-line self test passes", criterion_cli_selftest},
    };

    int failures = 0;
    int index = 0;
    for (const Entry& entry : entries) {
        ++index;
        Outcome outcome{false, ""};
        try {
            outcome = entry.run(cfg);
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %d: %s (%s)\n",
                    outcome.pass ? "PASS" : "FAIL", index, entry.what,
                    outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    std::printf("%d of 9 criteria passed\n", 9 - failures);
    return failures;
}
