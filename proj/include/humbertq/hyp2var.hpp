#pragma once

#include "humbertq/config.hpp"

namespace humbertq {

// Humbert confluent hypergeometric function of two variables,
//   Phi3(b; g; w, z) = sum_{k,l} (b)_k / ((g)_{k+l} k! l!) w^k z^l,
// summed along anti-diagonals k+l = s with a two-consecutive-small-diagonal
// stop rule. Requires g not a nonpositive integer.
double phi3(double b, double g, double w, double z, const EvalConfig& cfg = {});

// Phi3 divided by Gamma(g): sum_s A_s / Gamma(g+s) with
// A_s = sum_k (b)_k w^k z^{s-k} / (k! (s-k)!). Defined for every real g;
// parameter poles are removable because 1/Gamma vanishes there.
double phi3_regularized(double b, double g, double w, double z,
                        const EvalConfig& cfg = {});

// Humbert Psi2 function,
//   Psi2(a; d, d2; w, z) = sum_{k,l} (a)_{k+l} / ((d)_k (d2)_l k! l!) w^k z^l,
// anti-diagonal summation. Requires d, d2 not nonpositive integers.
double psi2(double a, double d, double d2, double w, double z,
            const EvalConfig& cfg = {});

// Regularized Phi3 at negative-integer first parameter:
//   Phi3(-k; g; X, W) / Gamma(g)
//     = W^{(1-g)/2} sum_{j=0}^{k} (-k)_j / j! X^j W^{-j/2} I_{g+j-1}(2 sqrt W),
// a finite Bessel sum valid for every real g (it realizes the limit at the
// parameter poles). Requires W > 0.
double phi3_reg_negint_b(int k, double g, double varsigma_x, double w_x,
                         const EvalConfig& cfg = {});

// Expansion coefficient
//   delta_j(b, g, w, z) = (-1)^{b-1} / (w^{b-1} (b-1)!) *
//     sum_{k=0}^{floor(j/2)} (-1)^k (b-j+k)_{j-k} (g-j-1+k)_{j-2k}
//                            / ((j-2k)! k!) * z^{b-1-j+k}
// for 0 <= j <= 2(b-1), w != 0. The Pochhammer factor vanishes exactly when
// the z exponent is negative, so z = 0 is safe.
double delta_coeff(int j, int b, double g, double w, double z);

// Regularized Psi2(a; a+n, a; w, z) / Gamma(a+n) rebuilt from the real
// modified-Marcum core:
//   sum_{j=0}^{2(n-1)} w^{1-a-n+j} delta_j(n, a+n, -w, wz) G_{a+n-1-j}(z, w).
// Requires w > 0, z >= 0; valid as a limit at parameter poles of Psi2.
double psi2_reg_via_marcum(double a, int n, double w, double z,
                           const EvalConfig& cfg = {});

// Regularized Psi2(a+n; a, a+n; w, z) / Gamma(a) as a finite Bessel sum:
//   e^{w+z} (wz)^{(1-a)/2} sum_{j=0}^{n} (-1)^j (-n)_j / j!
//                                        (w/z)^{j/2} I_{a+j-1}(2 sqrt(wz)).
// Requires w > 0, z > 0.
double psi2_reg_bessel_sum(double a, int n, double w, double z,
                           const EvalConfig& cfg = {});

}  // namespace humbertq
