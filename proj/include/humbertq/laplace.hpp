#pragma once

#include "humbertq/config.hpp"
#include "humbertq/marcum.hpp"

namespace humbertq {

// Parameters of the transform
//   In = 2 * int_0^inf e^{-p t^2} t^{mu2} Q_{mu1}(x t, y) I_{mu2-1}(c t) dt
// with x, y encoded as signed squares a2 = x^2, b2 = y^2. The closed forms
// require p > 0 and p_tilde = 2p + a2 > 0, and cover integer order offsets
// n = mu1 - mu2 only.
struct LaplaceParams {
    SignedSquareArg a2;
    SignedSquareArg b2;
    double c = 0.0;
    double p = 1.0;
    double mu1 = 1.0;
    double mu2 = 1.0;

    double p_tilde() const { return 2.0 * p + a2.s; }
    // Throws domain_error unless p > 0 and p_tilde > 0.
    void validate() const;
    // Order offset mu1 - mu2 rounded to the nearest integer; throws
    // unsupported_order_error when the offset is more than 1e-9 from one.
    int offset() const;
};

enum class InPath {
    equal_orders,          // single Marcum Q evaluation
    marcum_sum,            // equal-orders base plus finite Marcum/Bessel sums
    proper_integral,       // equal-orders base plus finite-range integrals
    quadrature_fallback,   // direct adaptive quadrature of the integrand
};
const char* to_string(InPath path);

struct InResult {
    double value;
    InPath path;
};

// Equal orders (n = 0):
//   (1/p) (c/2p)^{mu-1} e^{c^2/4p} Q_mu(a2 c^2/(2p pt), 2p b2/pt)
// with the Marcum arguments in signed-square form.
double in_equal_orders(const LaplaceParams& params, const EvalConfig& cfg = {});

// n >= 1, mu2 > -1, real arguments: equal-orders base at (mu2, mu2) plus a
// finite double sum of delta_coeff-weighted modified-Marcum terms.
double in_plus_n_marcum(const LaplaceParams& params, const EvalConfig& cfg = {});

// n >= 1, mu2 > 0, real arguments: equal-orders base plus a finite sum of
// proper integrals over [0,1], each evaluated by adaptive quadrature.
double in_plus_n_quadrature(const LaplaceParams& params, const EvalConfig& cfg = {});

// n <= -1 (mu1 = mu2 - m), real arguments, a2 > 0: equal-orders base at
// (mu2, mu2) minus a finite double Bessel sum.
double in_minus_n(const LaplaceParams& params, const EvalConfig& cfg = {});

// Routes to the applicable case by the integer offset n = mu1 - mu2 and the
// degenerate-parameter rules (a2 = 0, b2 = 0, c = 0); falls back to direct
// quadrature where no closed form applies. With cfg.paranoid set, n >= 1
// results are cross-validated against the proper-integral route.
InResult in_dispatch_ex(const LaplaceParams& params, const EvalConfig& cfg = {});
double in_dispatch(const LaplaceParams& params, const EvalConfig& cfg = {});

// L{ t^{(mu-1)/2} I_{mu-1}(c sqrt t) }(p) = (c/2)^{mu-1} p^{-mu} e^{c^2/4p}.
// Requires mu > 0, p > 0 (at c = 0 additionally mu >= 1).
double laplace_bessel_power(double mu, double c, double p);

// L{ Q_{mu1}(x, y sqrt t) t^{(mu2-1)/2} I_{mu2-1}(c sqrt t) }(p) for integer
// orders, via laplace_bessel_power(mu2,c,p) - In(b2, a2, c, p, 1-mu1, mu2)
// (slots swapped, order reflected).
double in_swapped(double a2, double b2, double c, double p, int mu1, int mu2,
                  const EvalConfig& cfg = {});

}  // namespace humbertq
