#pragma once

#include "humbertq/config.hpp"

namespace humbertq {

// log |Gamma(x)| together with the sign of Gamma(x).
struct LnGamma {
    double log_abs;
    int sign;  // +1 or -1
};

// Throws pole_error at nonpositive integers.
LnGamma ln_gamma(double x);

// 1/Gamma(x); returns 0 at the poles instead of throwing.
double rgamma(double x);

// Rising factorial (a)_k = a (a+1) ... (a+k-1); (a)_0 = 1.
double pochhammer(double a, int k);

// Modified Bessel function of the first kind, real order, x >= 0.
double bessel_i(double nu, double x, const EvalConfig& cfg = {});

// log I_nu(x) for nu > -1, x > 0 (all series terms positive); survives large x.
double ln_bessel_i(double nu, double x, const EvalConfig& cfg = {});

// 0F1(; q; z).
double hyp0f1(double q, double z, const EvalConfig& cfg = {});

// 1F1(s; q; w); large negative w handled by the Kummer transform.
double hyp1f1(double s, double q, double w, const EvalConfig& cfg = {});

// Generalized Laguerre polynomial L_k^{(a)}(x), three-term recurrence.
double laguerre(int k, double a, double x);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a), a > 0, x >= 0.
double upper_gamma_reg(double a, double x, const EvalConfig& cfg = {});

// Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x).
double lower_gamma_reg(double a, double x, const EvalConfig& cfg = {});

}  // namespace humbertq
