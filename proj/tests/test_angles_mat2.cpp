#include <cmath>
#include <random>

#include "doctest.h"

#include "amo/angles.hpp"
#include "amo/mat2.hpp"

using namespace amo;

TEST_CASE("frac reduces into [0,1)") {
    CHECK(frac(0.25) == doctest::Approx(0.25));
    CHECK(frac(-0.25) == doctest::Approx(0.75));
    CHECK(frac(3.0) == 0.0);
    CHECK(frac(-2.0) == 0.0);
}

TEST_CASE("frac_mul_add stays accurate at large n") {
    // against exact integer arithmetic for a rational alpha = p/q
    const long long p = 355, q = 1130;  // reduced: 71/226
    const double alpha = static_cast<double>(p) / q;
    for (long long n : {1000LL, 123456LL, 9999999LL}) {
        double got = frac_mul_add(0.1, n, alpha);
        long double exact = 0.1L + static_cast<long double>(n) * static_cast<long double>(alpha);
        exact -= std::floor(exact);
        CHECK(std::fabs(got - static_cast<double>(exact)) < 1e-11);
    }
    // small n agrees with the naive formula
    CHECK(frac_mul_add(0.3, 5, 0.1) == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("pairwise sum matches long-double reference") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(1023);
    long double ref = 0.0L;
    for (double& x : v) {
        x = uni(rng);
        ref += x;
    }
    CHECK(std::fabs(pairwise_sum(v) - static_cast<double>(ref)) < 1e-12);
}

TEST_CASE("kahan accumulator compensates") {
    KahanAccumulator acc;
    for (int i = 0; i < 10'000'000; ++i) acc.add(0.1);
    CHECK(acc.value() == doctest::Approx(1e6).epsilon(1e-12));
}

TEST_CASE("Mat2 algebra") {
    Mat2 a{1, 2, 3, 4}, b{0, 1, -1, 0};
    Mat2 c = a * b;
    CHECK(c.a == doctest::Approx(-2));
    CHECK(c.b == doctest::Approx(1));
    CHECK(c.c == doctest::Approx(-4));
    CHECK(c.d == doctest::Approx(3));
    CHECK(a.det() == doctest::Approx(-2));
    CHECK(b.det() == doctest::Approx(1));
    Mat2 binv = b.inverse_unimodular();
    Mat2 id = b * binv;
    CHECK(id.a == doctest::Approx(1));
    CHECK(id.d == doctest::Approx(1));
    CHECK(id.b == doctest::Approx(0));
    CHECK(id.c == doctest::Approx(0));
}

TEST_CASE("spectral norm closed form") {
    // rotation has norm 1
    Mat2 rot{std::cos(0.3), -std::sin(0.3), std::sin(0.3), std::cos(0.3)};
    CHECK(rot.spectral_norm() == doctest::Approx(1.0).epsilon(1e-12));
    // diagonal
    Mat2 d{3, 0, 0, 0.5};
    CHECK(d.spectral_norm() == doctest::Approx(3.0).epsilon(1e-12));
    // against power iteration on A^T A
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int t = 0; t < 50; ++t) {
        Mat2 m{uni(rng), uni(rng), uni(rng), uni(rng)};
        double x = 1.0, y = 0.3;
        for (int it = 0; it < 200; ++it) {
            auto v = m.apply(x, y);
            double gx = m.a * v[0] + m.c * v[1];
            double gy = m.b * v[0] + m.d * v[1];
            double nn = std::hypot(gx, gy);
            if (nn == 0.0) break;
            x = gx / nn;
            y = gy / nn;
        }
        auto v = m.apply(x, y);
        CHECK(m.spectral_norm() == doctest::Approx(std::hypot(v[0], v[1])).epsilon(1e-8));
    }
}
