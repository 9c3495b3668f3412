#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "humbertq/config.hpp"
#include "humbertq/fading.hpp"
#include "humbertq/laplace.hpp"
#include "humbertq/oracle.hpp"
#include "humbertq/parallel.hpp"
#include "humbertq/selftest.hpp"
#include "humbertq/specfun.hpp"

#include <iostream>

namespace {

using namespace humbertq;

EvalConfig config_from_env() {
    EvalConfig cfg;
    if (const char* raw = std::getenv("HUMBERTQ_MAX_TERMS")) {
        char* end = nullptr;
        const long parsed = std::strtol(raw, &end, 10);
        if (end == raw || *end != '\0' || parsed < 64)
            throw domain_error("HUMBERTQ_MAX_TERMS must be an integer >= 64");
        cfg.max_terms = static_cast<int>(parsed);
    }
    cfg.validate();
    return cfg;
}

struct SweepSpec {
    double start = 0.0;
    double stop = 0.0;
    int points = 0;

    void validate() const {
        if (points < 2) throw domain_error("sweep needs at least 2 points");
        if (!(start < stop)) throw domain_error("sweep needs start < stop");
    }
    double at(int i) const {
        return start + (stop - start) * static_cast<double>(i) /
               static_cast<double>(points - 1);
    }
};

struct Row {
    double x = 0.0;
    double value = 0.0;
    std::string method;
    double mc_estimate = 0.0;
    double mc_stderr = 0.0;
    bool ok = false;
    std::string error;
};

int emit_rows(const std::vector<Row>& rows, const char* x_name, const char* value_name,
              bool with_mc) {
    for (const Row& row : rows) {
        if (!row.ok) {
            std::fprintf(stderr, "error: %s\n", row.error.c_str());
            return 2;
        }
    }
    if (with_mc) {
        std::printf("%s,%s,method,mc_estimate,mc_stderr\n", x_name, value_name);
        for (const Row& row : rows)
            std::printf("%.17g,%.17g,%s,%.17g,%.17g\n", row.x, row.value,
                        row.method.c_str(), row.mc_estimate, row.mc_stderr);
    } else {
        std::printf("%s,%s,method\n", x_name, value_name);
        for (const Row& row : rows)
            std::printf("%.17g,%.17g,%s\n", row.x, row.value, row.method.c_str());
    }
    return 0;
}

struct LaplaceCli {
    double a2 = 0.0;
    double b2 = 0.0;
    double c = 0.0;
    double p = 1.0;
    double mu1 = 1.0;
    double mu2 = 1.0;
    bool verify = false;
    SweepSpec sweep;
    bool has_b2 = false;
    bool has_sweep = false;
};

int run_laplace(const LaplaceCli& opt, const EvalConfig& cfg) {
    if (opt.has_sweep == opt.has_b2) {
        std::fprintf(stderr,
                     "error: give either --b2 for a single point or --start/--stop/--points "
                     "to sweep beta2\n");
        return 2;
    }
    if (!opt.has_sweep) {
        LaplaceParams prm;
        prm.a2 = SignedSquareArg{opt.a2};
        prm.b2 = SignedSquareArg{opt.b2};
        prm.c = opt.c;
        prm.p = opt.p;
        prm.mu1 = opt.mu1;
        prm.mu2 = opt.mu2;
        const InResult result = in_dispatch_ex(prm, cfg);
        std::printf("value=%.17g path=%s\n", result.value, to_string(result.path));
        if (opt.verify) {
            const QuadResult oracle = quad_in(prm, cfg);
            const double scale =
                std::max({std::abs(result.value), std::abs(oracle.value), 1e-300});
            const double rel = std::abs(result.value - oracle.value) / scale;
            std::printf("oracle=%.17g rel_dev=%.3g\n", oracle.value, rel);
            if (rel > 1e-6) return 1;
        }
        return 0;
    }
    opt.sweep.validate();
    std::vector<Row> rows(static_cast<std::size_t>(opt.sweep.points));
    const auto filled = map_indexed(rows.size(), [&](std::size_t i) -> Row {
        Row row;
        row.x = opt.sweep.at(static_cast<int>(i));
        try {
            LaplaceParams prm;
            prm.a2 = SignedSquareArg{opt.a2};
            prm.b2 = SignedSquareArg{row.x};
            prm.c = opt.c;
            prm.p = opt.p;
            prm.mu1 = opt.mu1;
            prm.mu2 = opt.mu2;
            const InResult result = in_dispatch_ex(prm, cfg);
            row.value = result.value;
            row.method = to_string(result.path);
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        return row;
    });
    int verify_rc = 0;
    if (opt.verify) {
        for (const Row& row : filled) {
            if (!row.ok) continue;
            LaplaceParams prm;
            prm.a2 = SignedSquareArg{opt.a2};
            prm.b2 = SignedSquareArg{row.x};
            prm.c = opt.c;
            prm.p = opt.p;
            prm.mu1 = opt.mu1;
            prm.mu2 = opt.mu2;
            const double oracle = quad_in(prm, cfg).value;
            const double scale = std::max({std::abs(row.value), std::abs(oracle), 1e-300});
            if (std::abs(row.value - oracle) / scale > 1e-6) verify_rc = 1;
        }
    }
    const int rc = emit_rows(filled, "beta2", "value", false);
    return rc != 0 ? rc : verify_rc;
}

struct OutageCli {
    double kappa_s = 1.0;
    double mu_s = 1.0;
    double kappa_i = 1.0;
    double mu_i = 1.0;
    double z = 1.0;
    double sir_db = 0.0;
    std::string sweep_var = "sir-db";
    SweepSpec sweep;
    long monte_carlo = 0;
    std::uint64_t seed = 20260819ull;
};

int run_outage(const OutageCli& opt, const EvalConfig& cfg) {
    opt.sweep.validate();
    if (opt.sweep_var != "sir-db" && opt.sweep_var != "z") {
        std::fprintf(stderr, "error: --sweep must be sir-db or z\n");
        return 2;
    }
    if (opt.monte_carlo < 0) {
        std::fprintf(stderr, "error: --monte-carlo must be nonnegative\n");
        return 2;
    }
    const bool sweep_sir = opt.sweep_var == "sir-db";
    std::vector<Row> rows(static_cast<std::size_t>(opt.sweep.points));
    const auto filled = map_indexed(rows.size(), [&](std::size_t i) -> Row {
        Row row;
        row.x = opt.sweep.at(static_cast<int>(i));
        const double sir_db = sweep_sir ? row.x : opt.sir_db;
        const double z = sweep_sir ? opt.z : row.x;
        try {
            InterferenceScenario sc;
            sc.soi = KappaMuParams{opt.kappa_s, opt.mu_s, 1.0};
            sc.cci = KappaMuParams{opt.kappa_i, opt.mu_i, 1.0};
            const TaggedProb result = outage_probability(sc, sir_db, z, cfg);
            row.value = result.value;
            row.method = result.closed_form ? "closed-form" : "numeric";
            if (opt.monte_carlo > 0) {
                const std::size_t n = static_cast<std::size_t>(opt.monte_carlo);
                KappaMuParams soi = sc.soi;
                soi.omega = std::pow(10.0, sir_db / 10.0);
                const auto s = sample_kappa_mu_serial(soi, n, opt.seed + 2 * i);
                const auto itf = sample_kappa_mu_serial(sc.cci, n, opt.seed + 2 * i + 1);
                double hits = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    if (s[k] < z * itf[k]) hits += 1.0;
                row.mc_estimate = hits / static_cast<double>(n);
                row.mc_stderr = std::sqrt(row.mc_estimate * (1.0 - row.mc_estimate) /
                                          static_cast<double>(n));
            }
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        return row;
    });
    return emit_rows(filled, sweep_sir ? "sir_db" : "z", "p_out", opt.monte_carlo > 0);
}

struct DetectCli {
    double u = 1.0;
    double mu = 1.0;
    double kappa = 1.0;
    double pf = 0.1;
    double lambda = 0.0;
    bool has_lambda = false;
    SweepSpec sweep;
};

int run_detect(const DetectCli& opt, const EvalConfig& cfg) {
    opt.sweep.validate();
    const double lambda = opt.has_lambda ? opt.lambda : threshold_from_pf(opt.u, opt.pf, cfg);
    const double pf_check = upper_gamma_reg(opt.u, 0.5 * lambda, cfg);
    std::fprintf(stderr, "lambda=%.17g pf_check=%.17g\n", lambda, pf_check);
    std::vector<Row> rows(static_cast<std::size_t>(opt.sweep.points));
    const auto filled = map_indexed(rows.size(), [&](std::size_t i) -> Row {
        Row row;
        row.x = opt.sweep.at(static_cast<int>(i));
        try {
            DetectionParams det;
            det.u = opt.u;
            det.lambda = lambda;
            det.channel = KappaMuParams{opt.kappa, opt.mu, std::pow(10.0, row.x / 10.0)};
            const TaggedProb result = detection_probability_kappa_mu(det, cfg);
            row.value = result.value;
            row.method = result.closed_form ? "closed-form" : "numeric";
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        return row;
    });
    return emit_rows(filled, "omega_db", "p_d", false);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Closed-form Laplace transforms of generalized Marcum Q and Bessel products,\n"
        "with kappa-mu outage and energy-detection applications"};
    app.require_subcommand(1);

    LaplaceCli lap;
    CLI::App* lap_cmd = app.add_subcommand(
        "laplace", "Evaluate the product transform at one point or over a beta2 sweep");
    lap_cmd->add_option("--a2", lap.a2, "First squared Marcum argument (may be negative)")
        ->required();
    CLI::Option* b2_opt =
        lap_cmd->add_option("--b2", lap.b2, "Second squared Marcum argument (may be negative)");
    lap_cmd->add_option("--c", lap.c, "Bessel coefficient c >= 0")->required();
    lap_cmd->add_option("--p", lap.p, "Transform variable p > 0")->required();
    lap_cmd->add_option("--mu1", lap.mu1, "Marcum order")->required();
    lap_cmd->add_option("--mu2", lap.mu2, "Bessel order offset parameter")->required();
    lap_cmd->add_flag("--verify", lap.verify,
                      "Cross-check against adaptive quadrature; nonzero exit if rel > 1e-6");
    CLI::Option* lap_start = lap_cmd->add_option("--start", lap.sweep.start, "Sweep start");
    CLI::Option* lap_stop = lap_cmd->add_option("--stop", lap.sweep.stop, "Sweep stop");
    CLI::Option* lap_points =
        lap_cmd->add_option("--points", lap.sweep.points, "Sweep point count (>= 2)");
    lap_start->needs(lap_stop, lap_points);
    lap_stop->needs(lap_start, lap_points);
    lap_points->needs(lap_start, lap_stop);

    OutageCli out;
    CLI::App* out_cmd = app.add_subcommand(
        "outage", "Outage probability of a kappa-mu signal under kappa-mu interference");
    out_cmd->add_option("--kappa-s", out.kappa_s, "Signal kappa")->required();
    out_cmd->add_option("--mu-s", out.mu_s, "Signal mu (positive integer)")->required();
    out_cmd->add_option("--kappa-i", out.kappa_i, "Interferer kappa")->required();
    out_cmd->add_option("--mu-i", out.mu_i, "Interferer mu (positive integer)")->required();
    out_cmd->add_option("--z", out.z, "Protection ratio threshold (default 1)");
    out_cmd->add_option("--sir-db", out.sir_db,
                        "Fixed average SIR in dB, used when sweeping z (default 0)");
    out_cmd->add_option("--sweep", out.sweep_var, "Sweep variable: sir-db (default) or z");
    out_cmd->add_option("--start", out.sweep.start, "Sweep start")->required();
    out_cmd->add_option("--stop", out.sweep.stop, "Sweep stop")->required();
    out_cmd->add_option("--points", out.sweep.points, "Sweep point count (>= 2)")->required();
    out_cmd->add_option("--monte-carlo", out.monte_carlo,
                        "Append a Monte Carlo estimate and standard error per row");
    out_cmd->add_option("--seed", out.seed, "Monte Carlo seed (default 20260819)");

    DetectCli det;
    CLI::App* det_cmd = app.add_subcommand(
        "detect", "Energy-detection probability over kappa-mu fading, swept in average SNR dB");
    det_cmd->add_option("--u", det.u, "Half time-bandwidth product u > 0")->required();
    det_cmd->add_option("--mu", det.mu, "Channel mu")->required();
    det_cmd->add_option("--kappa", det.kappa, "Channel kappa")->required();
    det_cmd->add_option("--pf", det.pf, "Target false-alarm probability (default 0.1)");
    CLI::Option* lambda_opt =
        det_cmd->add_option("--lambda", det.lambda, "Detection threshold (overrides --pf)");
    det_cmd->add_option("--start", det.sweep.start, "Sweep start in dB")->required();
    det_cmd->add_option("--stop", det.sweep.stop, "Sweep stop in dB")->required();
    det_cmd->add_option("--points", det.sweep.points, "Sweep point count (>= 2)")->required();

    std::string suite = "all";
    CLI::App* self_cmd =
        app.add_subcommand("selftest", "Run the built-in verification suites");
    self_cmd->add_option("suite", suite, "identities, oracle, montecarlo, or all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const EvalConfig cfg = config_from_env();
        if (lap_cmd->parsed()) {
            lap.has_b2 = b2_opt->count() > 0;
            lap.has_sweep = lap_points->count() > 0;
            return run_laplace(lap, cfg);
        }
        if (out_cmd->parsed()) return run_outage(out, cfg);
        if (det_cmd->parsed()) {
            det.has_lambda = lambda_opt->count() > 0;
            return run_detect(det, cfg);
        }
        if (self_cmd->parsed()) return run_selftest(suite, cfg, std::cout);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
