#include "humbertq/hyp2var.hpp"

#include <cmath>
#include <vector>

#include "humbertq/marcum.hpp"
#include "humbertq/specfun.hpp"

namespace humbertq {

namespace {

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

double factorial(int n) {
    return std::tgamma(n + 1.0);
}

}  // namespace

double phi3(double b, double g, double w, double z, const EvalConfig& cfg) {
    cfg.validate();
    if (is_nonpositive_integer(g))
        throw pole_error("phi3: lower parameter g must not be a nonpositive integer");

    // Anti-diagonal summation: T[k] holds (b)_k w^k z^{s-k} / (k! (s-k)!) for the
    // current diagonal s, updated in place so no factorials are ever formed.
    std::vector<double> row{1.0};
    row.reserve(128);
    double total = 1.0;
    double poch_g = 1.0;  // (g)_s
    int small_run = 0;
    for (int s = 1; s < cfg.max_terms; ++s) {
        row.push_back(row[s - 1] * w * (b + s - 1) / s);
        for (int k = s - 1; k >= 0; --k) row[k] *= z / (s - k);
        double diag = 0.0;
        for (double t : row) diag += t;
        poch_g *= g + s - 1;
        const double term = diag / poch_g;
        total += term;
        if (!std::isfinite(total))
            throw convergence_error("phi3: series overflowed before convergence");
        if (std::abs(term) <= cfg.rel_tol * std::abs(total)) {
            if (++small_run >= 2) return total;
        } else {
            small_run = 0;
        }
    }
    throw convergence_error("phi3: series did not converge within max_terms diagonals");
}

double phi3_regularized(double b, double g, double w, double z, const EvalConfig& cfg) {
    cfg.validate();
    if (b == 1.0) {
        // (1)_k = k! collapses each diagonal to A_s = w A_{s-1} + z^s/s!.
        double diag = 1.0;
        double zpow = 1.0;  // z^s / s!
        double total = rgamma(g);
        bool seen_nonzero = total != 0.0;
        int small_run = 0;
        for (int s = 1; s < cfg.max_terms; ++s) {
            zpow *= z / s;
            diag = w * diag + zpow;
            if (!std::isfinite(diag))
                throw convergence_error("phi3_regularized: series overflowed before convergence");
            const double term = diag * rgamma(g + s);
            total += term;
            if (term != 0.0) seen_nonzero = true;
            if (seen_nonzero && s >= 4 && std::abs(term) <= cfg.rel_tol * std::abs(total)) {
                if (++small_run >= 2) return total;
            } else {
                small_run = 0;
            }
        }
        throw convergence_error(
            "phi3_regularized: series did not converge within max_terms diagonals");
    }

    std::vector<double> row{1.0};
    row.reserve(128);
    double total = rgamma(g);
    bool seen_nonzero = total != 0.0;
    int small_run = 0;
    for (int s = 1; s < cfg.max_terms; ++s) {
        row.push_back(row[s - 1] * w * (b + s - 1) / s);
        for (int k = s - 1; k >= 0; --k) row[k] *= z / (s - k);
        double diag = 0.0;
        for (double t : row) diag += t;
        if (!std::isfinite(diag))
            throw convergence_error("phi3_regularized: series overflowed before convergence");
        const double term = diag * rgamma(g + s);
        total += term;
        if (term != 0.0) seen_nonzero = true;
        if (seen_nonzero && s >= 4 && std::abs(term) <= cfg.rel_tol * std::abs(total)) {
            if (++small_run >= 2) return total;
        } else {
            small_run = 0;
        }
    }
    throw convergence_error("phi3_regularized: series did not converge within max_terms diagonals");
}

double psi2(double a, double d, double d2, double w, double z, const EvalConfig& cfg) {
    cfg.validate();
    if (is_nonpositive_integer(d))
        throw pole_error("psi2: lower parameter d must not be a nonpositive integer");
    if (is_nonpositive_integer(d2))
        throw pole_error("psi2: lower parameter d2 must not be a nonpositive integer");

    // T[k] holds w^k z^{s-k} / ((d)_k (d2)_{s-k} k! (s-k)!) for the current diagonal.
    std::vector<double> row{1.0};
    row.reserve(128);
    double total = 1.0;
    double poch_a = 1.0;  // (a)_s
    int small_run = 0;
    for (int s = 1; s < cfg.max_terms; ++s) {
        row.push_back(row[s - 1] * w / ((d + s - 1) * s));
        for (int k = s - 1; k >= 0; --k) row[k] *= z / ((d2 + s - k - 1) * (s - k));
        double diag = 0.0;
        for (double t : row) diag += t;
        poch_a *= a + s - 1;
        const double term = poch_a * diag;
        total += term;
        if (!std::isfinite(total))
            throw convergence_error("psi2: series overflowed before convergence");
        if (std::abs(term) <= cfg.rel_tol * std::abs(total)) {
            if (++small_run >= 2) return total;
        } else {
            small_run = 0;
        }
    }
    throw convergence_error("psi2: series did not converge within max_terms diagonals");
}

double delta_coeff(int j, int b, double g, double w, double z) {
    if (b < 1) throw domain_error("delta_coeff: b must be a positive integer");
    if (j < 0 || j > 2 * (b - 1))
        throw domain_error("delta_coeff: j must lie in [0, 2(b-1)]");
    if (w == 0.0) throw domain_error("delta_coeff: w must be nonzero");

    double total = 0.0;
    for (int k = 0; k <= j / 2; ++k) {
        // Pochhammer factor first: it vanishes identically for many (j,k) and
        // guards the z^(b-1-j+k) power against negative exponents at z = 0.
        const double p1 = pochhammer(static_cast<double>(b - j + k), j - k);
        if (p1 == 0.0) continue;
        const int e = b - 1 - j + k;
        double zp;
        if (z == 0.0) {
            zp = (e == 0) ? 1.0 : 0.0;
        } else {
            zp = std::pow(z, e);
        }
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        total += sgn * p1 * pochhammer(g - j - 1 + k, j - 2 * k) /
                 (factorial(j - 2 * k) * factorial(k)) * zp;
    }
    const double sgnb = ((b - 1) % 2 == 0) ? 1.0 : -1.0;
    return sgnb / (std::pow(w, b - 1) * factorial(b - 1)) * total;
}

double phi3_reg_negint_b(int k, double g, double varsigma_x, double w_x,
                         const EvalConfig& cfg) {
    cfg.validate();
    if (k < 0) throw domain_error("phi3_reg_negint_b: k must be a nonnegative integer");
    if (!(w_x > 0.0)) throw domain_error("phi3_reg_negint_b: w_x must be positive");
    const double root = std::sqrt(w_x);
    double total = 0.0;
    for (int j = 0; j <= k; ++j) {
        total += pochhammer(static_cast<double>(-k), j) / factorial(j) *
                 std::pow(varsigma_x, j) * std::pow(w_x, -0.5 * j) *
                 bessel_i(g + j - 1.0, 2.0 * root, cfg);
    }
    return std::pow(w_x, 0.5 * (1.0 - g)) * total;
}

double psi2_reg_via_marcum(double a, int n, double w, double z, const EvalConfig& cfg) {
    cfg.validate();
    if (n < 1) throw domain_error("psi2_reg_via_marcum: n must be a positive integer");
    if (!(w > 0.0)) throw domain_error("psi2_reg_via_marcum: w must be positive");
    if (z < 0.0) throw domain_error("psi2_reg_via_marcum: z must be nonnegative");
    double total = 0.0;
    for (int j = 0; j <= 2 * (n - 1); ++j) {
        total += std::pow(w, 1.0 - a - n + j) * delta_coeff(j, n, a + n, -w, w * z) *
                 marcum_g_mod(a + n - 1.0 - j, z, w, cfg);
    }
    return total;
}

double psi2_reg_bessel_sum(double a, int n, double w, double z, const EvalConfig& cfg) {
    cfg.validate();
    if (n < 0) throw domain_error("psi2_reg_bessel_sum: n must be a nonnegative integer");
    if (!(w > 0.0) || !(z > 0.0))
        throw domain_error("psi2_reg_bessel_sum: w and z must be positive");
    const double root = std::sqrt(w * z);
    double total = 0.0;
    for (int j = 0; j <= n; ++j) {
        const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
        total += sgn * pochhammer(static_cast<double>(-n), j) / factorial(j) *
                 std::pow(w / z, 0.5 * j) * bessel_i(a + j - 1.0, 2.0 * root, cfg);
    }
    return std::exp(w + z) * std::pow(w * z, 0.5 * (1.0 - a)) * total;
}

}  // namespace humbertq
