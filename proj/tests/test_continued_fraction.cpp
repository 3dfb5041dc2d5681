#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "amo/continued_fraction.hpp"

using namespace amo;

namespace {
double golden() { return (std::sqrt(5.0) - 1.0) / 2.0; }
}

TEST_CASE("golden mean has the all-ones expansion with Fibonacci convergents") {
    ContinuedFraction cf = expand_continued_fraction(golden(), 5);
    REQUIRE(cf.partial_quotients.size() == 5);
    for (long long a : cf.partial_quotients) CHECK(a == 1);
    REQUIRE(cf.convergents.size() == 5);
    const long long P[] = {1, 1, 2, 3, 5};
    const long long Q[] = {1, 2, 3, 5, 8};
    for (int k = 0; k < 5; ++k) {
        CHECK(cf.convergents[k].p == P[k]);
        CHECK(cf.convergents[k].q == Q[k]);
    }
    CHECK_FALSE(cf.is_rational());
}

TEST_CASE("silver ratio expansion is periodic [2,2,2]") {
    ContinuedFraction cf = expand_continued_fraction(std::sqrt(2.0) - 1.0, 3);
    REQUIRE(cf.partial_quotients.size() == 3);
    for (long long a : cf.partial_quotients) CHECK(a == 2);
    CHECK(cf.convergents[0].p == 1);
    CHECK(cf.convergents[0].q == 2);
    CHECK(cf.convergents[1].p == 2);
    CHECK(cf.convergents[1].q == 5);
    CHECK(cf.convergents[2].p == 5);
    CHECK(cf.convergents[2].q == 12);
}

TEST_CASE("rational input terminates with its exact final convergent") {
    ContinuedFraction cf = expand_continued_fraction(3.0 / 7.0, 20);
    CHECK(cf.is_rational());
    REQUIRE(!cf.convergents.empty());
    CHECK(cf.convergents.back().p == 3);
    CHECK(cf.convergents.back().q == 7);
}

TEST_CASE("convergent recurrence holds in exact integer arithmetic") {
    ContinuedFraction cf = expand_continued_fraction(0.7390851332151607, 18);
    REQUIRE(cf.convergents.size() >= 3);
    for (std::size_t k = 2; k < cf.convergents.size(); ++k) {
        long long a = cf.partial_quotients[k];
        CHECK(cf.convergents[k].p == a * cf.convergents[k - 1].p + cf.convergents[k - 2].p);
        CHECK(cf.convergents[k].q == a * cf.convergents[k - 1].q + cf.convergents[k - 2].q);
    }
    // seeds: p1 = a1*0 + 1, q1 = a1*1 + 0
    CHECK(cf.convergents[0].p == 1);
    CHECK(cf.convergents[0].q == cf.partial_quotients[0]);
}

TEST_CASE("denominators increase and convergents alternate around alpha") {
    double alpha = 0.318309886183790672;  // 1/pi
    ContinuedFraction cf = expand_continued_fraction(alpha, 12);
    for (std::size_t k = 1; k < cf.convergents.size(); ++k)
        CHECK(cf.convergents[k].q > cf.convergents[k - 1].q);
    for (std::size_t k = 1; k < cf.convergents.size(); ++k) {
        double d1 = cf.convergents[k - 1].value() - alpha;
        double d2 = cf.convergents[k].value() - alpha;
        CHECK(d1 * d2 < 0.0);
    }
}

TEST_CASE("quality bounds |alpha - p/q| < 1/(q q') and 1/q^2") {
    for (double alpha : {golden(), std::sqrt(2.0) - 1.0, 0.7390851332151607}) {
        ContinuedFraction cf = expand_continued_fraction(alpha, 14);
        for (std::size_t k = 0; k < cf.convergents.size(); ++k) {
            double res = cf.residual(static_cast<int>(k + 1));
            double q = static_cast<double>(cf.convergents[k].q);
            CHECK(res < 1.0 / (q * q));
            if (k + 1 < cf.convergents.size()) {
                double qn = static_cast<double>(cf.convergents[k + 1].q);
                CHECK(res < 1.0 / (q * qn));
            }
        }
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(expand_continued_fraction(std::nan(""), 4), std::invalid_argument);
    CHECK_THROWS_AS(expand_continued_fraction(1.5, 4), std::invalid_argument);
    CHECK_THROWS_AS(expand_continued_fraction(0.5, 0), std::invalid_argument);
}
