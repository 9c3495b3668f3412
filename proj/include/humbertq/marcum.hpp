#pragma once

#include "humbertq/config.hpp"

namespace humbertq {

// Signed-square encoding of an argument x that is either real or purely
// imaginary: s = x^2. s >= 0 means x = sqrt(s); s < 0 means x = i*sqrt(-s).
// Every consuming formula reduces to real arithmetic in s.
struct SignedSquareArg {
    double s = 0.0;
    constexpr SignedSquareArg(double squared = 0.0) : s(squared) {}
};

// Generalized Marcum Q function Q_M(x, y) of real order, arguments given as
// signed squares a2 = x^2, b2 = y^2.
//
// Real arguments (both s >= 0):
//   M > 0:              Poisson-weighted incomplete-gamma series.
//   integer M <= 0:     reflection Q_M(x,y) = 1 - Q_{1-M}(y,x).
//   M in (-1,0):        1 - one_minus_q_phi3 (requires b2 > 0).
//   non-integer M <= -1: unsupported_order_error.
// Imaginary argument in either slot (s < 0): real-valued Laguerre series,
// phase-stripped (see marcum_g_mod); always finite and real.
double marcum_q(double order, SignedSquareArg a2, SignedSquareArg b2,
                const EvalConfig& cfg = {});

// Order recurrence: returns Q_{order+n} computed from Q_{order} plus n
// Bessel correction terms,
//   Q_{M+n} = Q_M + (y/x)^M e^{-(x^2+y^2)/2} sum_{k=0}^{n-1} (y/x)^k I_{M+k}(xy).
// Real arguments only; requires a2.s > 0 (the formula divides by x).
double marcum_recurrence_rhs(double order, int n, SignedSquareArg a2,
                             SignedSquareArg b2, const EvalConfig& cfg = {});

// Regularized Phi3 series
//   (a2/2)^{1-M} e^{-(a2+b2)/2} Phi3(1; 2-M; a2/2, a2 b2/4) / Gamma(2-M)
// for order M < 2. Identically equal to 1 - Q_{1-M}(y,x) for any order, so
// it reproduces Q_M(x,y) exactly at integer orders, where the reflection
// identity closes the gap. Requires a2 > 0, b2 >= 0.
double marcum_phi3_M_lt_2(double order, double a2, double b2,
                          const EvalConfig& cfg = {});

// 1 - Q_M(x,y) through the regularized Phi3 series:
//   (b2/2)^M e^{-(a2+b2)/2} Phi3(1; M+1; b2/2, a2 b2/4) / Gamma(M+1).
// For M > -1 this equals 1 - marcum_q; for lower orders it is the canonical
// continuation consumed by phi3_via_marcum (it matches the reflection value
// at integer M <= 0). Requires a2 >= 0 and b2 > 0, or b2 = 0 with M > 0.
double one_minus_q_phi3(double order, double a2, double b2,
                        const EvalConfig& cfg = {});

// Phi3(b; g; t, v) for positive integer b rebuilt from Marcum-type terms of
// descending order:
//   Gamma(g) e^{v/t + t} sum_{j=0}^{2(b-1)} delta_j(b,g,t,v) t^{1-g+j}
//                                           * one_minus_q_phi3(g-1-j, 2v/t, 2t).
// Requires t > 0, v >= 0.
double phi3_via_marcum(int b, double g, double t, double v,
                       const EvalConfig& cfg = {});

// Real core of the modified (imaginary-argument) Marcum Q:
//   G_M(zbar, wbar) = e^{zbar} sum_k L_k^{(M-1)}(-zbar) wbar^{M+k} / Gamma(M+k+1)
// for zbar >= 0, wbar >= 0, any real M. For integer M it satisfies
// (-1)^M G_M(zbar, wbar) = 1 - Q_M(i sqrt(2 zbar), i sqrt(2 wbar)); the
// consuming identities absorb the phase analytically, so only this real
// quantity is ever needed.
double marcum_g_mod(double order, double zbar, double wbar,
                    const EvalConfig& cfg = {});

}  // namespace humbertq
