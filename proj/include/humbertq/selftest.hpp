#pragma once

#include "humbertq/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace humbertq {

struct CheckResult {
    std::string name;
    double max_dev = 0.0;  // worst deviation observed over the check's lattice
    double tol = 0.0;      // threshold the deviation is held to
    bool pass = false;
};

// Identity lattices: Marcum reflection/recurrence/Phi3 relations, Psi2/Phi3
// confluence and Bessel-sum identities, delta-coefficient expansions.
std::vector<CheckResult> selftest_identities(const EvalConfig& cfg = {});

// Closed forms against the quadrature oracles: the full dispatch grid vs
// quad_in, route agreement, marcum_q vs quad_marcum, distribution layer.
std::vector<CheckResult> selftest_oracle(const EvalConfig& cfg = {});

// Monte-Carlo checks: sampler moments, empirical CDF band, outage closed
// form vs paired-stream simulation.
std::vector<CheckResult> selftest_montecarlo(const EvalConfig& cfg = {});

// Runs the named suite ("identities", "oracle", "montecarlo", or "all"),
// streaming one line per check to out. Returns 0 if every check passed,
// 1 otherwise (including unknown suite names).
int run_selftest(const std::string& suite, const EvalConfig& cfg,
                 std::ostream& out);

}  // namespace humbertq
