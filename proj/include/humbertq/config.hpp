#pragma once

#include <stdexcept>
#include <string>

namespace humbertq {

// Shared evaluation policy for every series and quadrature routine.
struct EvalConfig {
    double rel_tol = 1e-13;   // series stop: two consecutive terms below rel_tol * |sum|
    int max_terms = 10000;    // series term cap before giving up
    double quad_abs_tol = 1e-12;
    bool paranoid = false;    // cross-validate alternative closed-form routes where available

    void validate() const {
        if (!(rel_tol > 0.0) || !(rel_tol < 1e-3))
            throw std::invalid_argument("EvalConfig: rel_tol must be in (0, 1e-3)");
        if (max_terms < 64)
            throw std::invalid_argument("EvalConfig: max_terms must be >= 64");
        if (!(quad_abs_tol > 0.0))
            throw std::invalid_argument("EvalConfig: quad_abs_tol must be > 0");
    }
};

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gamma-type pole hit at a nonpositive integer parameter.
struct pole_error : error {
    using error::error;
};

// Input outside the mathematical domain of the routine.
struct domain_error : error {
    using error::error;
};

// Order combination the closed forms do not cover.
struct unsupported_order_error : error {
    using error::error;
};

// Series or iteration hit its term cap before the stop rule fired.
struct convergence_error : error {
    using error::error;
};

}  // namespace humbertq
