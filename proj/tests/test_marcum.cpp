#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "humbertq/marcum.hpp"
#include "humbertq/specfun.hpp"

using namespace humbertq;

namespace {
double rel_dev(double got, double want) {
    return std::abs(got - want) /
           std::max({std::abs(got), std::abs(want), 1e-300});
}
}  // namespace

TEST_CASE("generalized Marcum Q, real arguments") {
    CHECK(rel_dev(marcum_q(2.0, 1.0, 1.0), 0.94079021914652872) < 1e-12);
    CHECK(rel_dev(marcum_q(2.5, 2.0, 3.0), 0.84015651075395281) < 1e-12);
    CHECK(rel_dev(marcum_q(0.5, 1.0, 1.0), 0.5227501319481791) < 1e-12);
    CHECK(rel_dev(marcum_q(1.5, 0.7, 2.2), 0.62367169041437565) < 1e-12);
    CHECK(rel_dev(marcum_q(2.7, 1.4, 2.2), 0.91424368621787122) < 1e-12);

    CHECK(marcum_q(2.5, 3.0, 0.0) == 1.0);
    CHECK(marcum_q(0.5, 1.0, 0.0) == 1.0);
    CHECK(rel_dev(marcum_q(1.0, 0.0, 2.0), 0.36787944117144233) < 1e-13);
    CHECK(rel_dev(marcum_q(2.5, 0.0, 3.0), upper_gamma_reg(2.5, 1.5)) < 1e-13);

    // probability bounds and monotonicity in the threshold
    double prev = 1.0;
    for (double b2 = 0.0; b2 <= 9.0; b2 += 0.75) {
        const double q = marcum_q(1.7, 2.1, b2);
        CHECK(q >= 0.0);
        CHECK(q <= prev);
        prev = q;
    }
}

TEST_CASE("nonpositive and fractional orders") {
    // integer order <= 0 goes through the reflection identity
    CHECK(rel_dev(marcum_q(0.0, 1.0, 2.0),
                  1.0 - marcum_q(1.0, 2.0, 1.0)) < 1e-12);
    CHECK(rel_dev(marcum_q(-1.0, 0.5, 1.5),
                  1.0 - marcum_q(2.0, 1.5, 0.5)) < 1e-12);
    // order in (-1,0): consistency with the recurrence route
    CHECK(rel_dev(marcum_recurrence_rhs(-0.3, 1, 1.2, 0.9),
                  marcum_q(0.7, 1.2, 0.9)) < 1e-10);
    CHECK_THROWS_AS(marcum_q(-1.5, 1.0, 1.0), unsupported_order_error);
    CHECK_THROWS_AS(marcum_q(-0.5, 1.0, 0.0), domain_error);
}

TEST_CASE("order recurrence") {
    CHECK(rel_dev(marcum_recurrence_rhs(1.5, 2, 1.2, 0.8),
                  marcum_q(3.5, 1.2, 0.8)) < 1e-10);
    CHECK(rel_dev(marcum_recurrence_rhs(0.7, 3, 2.0, 3.0),
                  marcum_q(3.7, 2.0, 3.0)) < 1e-10);
    // y = 0: the Bessel terms collapse to their power limits
    CHECK(rel_dev(marcum_recurrence_rhs(1.0, 3, 0.5, 0.0), 1.0) < 1e-12);
    CHECK(rel_dev(marcum_recurrence_rhs(-1.0, 2, 0.5, 0.0), 1.0) < 1e-12);
    CHECK_THROWS_AS(marcum_recurrence_rhs(1.0, 2, 0.0, 1.0), domain_error);
}

TEST_CASE("phi3 representations of Q and 1 - Q") {
    // Exact match with Q at integer orders, where reflection closes the gap.
    for (const double order : {-2.0, -1.0, 0.0, 1.0}) {
        CHECK(rel_dev(marcum_phi3_M_lt_2(order, 1.3, 0.9),
                      marcum_q(order, 1.3, 0.9)) < 1e-10);
    }
    // At any order the series is the reflected complement 1 - Q_{1-M}(y,x).
    for (const double order : {-0.5, 0.5, 1.3}) {
        CHECK(rel_dev(marcum_phi3_M_lt_2(order, 1.3, 0.9),
                      1.0 - marcum_q(1.0 - order, 0.9, 1.3)) < 1e-10);
    }
    CHECK(rel_dev(one_minus_q_phi3(1.7, 2.0, 1.0), 0.064053857590931185) < 1e-11);
    for (const double order : {0.3, 1.0, 1.7}) {
        CHECK(rel_dev(one_minus_q_phi3(order, 2.0, 1.0),
                      1.0 - marcum_q(order, 2.0, 1.0)) < 1e-10);
    }
    // b2 = 0 is allowed only for positive order, where 1 - Q vanishes
    CHECK(one_minus_q_phi3(1.5, 2.0, 0.0) == 0.0);
    CHECK_THROWS_AS(one_minus_q_phi3(-0.5, 2.0, 0.0), domain_error);
}

TEST_CASE("imaginary-argument (modified) values") {
    CHECK(rel_dev(marcum_q(1.5, -0.8, -1.2), 0.16305003385291844) < 1e-11);
    for (const double order : {0.5, 1.0, 1.7, 3.0})
        for (const double sa : {-2.0, -0.5})
            for (const double sb : {-1.5, -0.25})
                CHECK(std::isfinite(marcum_q(order, sa, sb)));
    CHECK(std::isfinite(marcum_q(1.5, -1.5, 1.5)));
    CHECK(std::isfinite(marcum_q(1.5, 1.5, -1.5)));
    // b2 = 0 limits of the modified form
    CHECK(marcum_q(2.0, -1.0, 0.0) == 1.0);
    CHECK(rel_dev(marcum_q(0.0, -1.0, 0.0), 1.0 - std::exp(0.5)) < 1e-12);
}

TEST_CASE("modified-core building block") {
    // at zbar = 0 the Laguerre factors are 1 and the sum telescopes to e^w - 1
    CHECK(rel_dev(marcum_g_mod(1.0, 0.0, 0.7), std::expm1(0.7)) < 1e-12);
    CHECK(marcum_g_mod(0.0, 0.4, 0.0) == std::exp(0.4));
    CHECK(marcum_g_mod(2.5, 0.4, 0.0) == 0.0);
    CHECK_THROWS_AS(marcum_g_mod(-1.0, 0.4, 0.0), domain_error);
}
