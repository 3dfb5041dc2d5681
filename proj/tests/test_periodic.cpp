// The Bloch eigenvalue union is the independent oracle for the band
// machinery: it is exercised first and every band_set claim is checked
// against it at small period.

#include <cmath>
#include <numeric>

#include "doctest.h"

#include "amo/operator_core.hpp"
#include "amo/periodic.hpp"

using namespace amo;

TEST_CASE("bloch oracle: q = 1 gives the full interval [-2-2l, 2+2l]") {
    for (double lambda : {0.5, 1.0, 2.0}) {
        BandSet bs = band_set_bloch_oracle(lambda, 0, 1, 64);
        REQUIRE(bs.intervals.size() == 1);
        CHECK(bs.intervals[0].lo == doctest::Approx(-2.0 - 2.0 * lambda).epsilon(1e-9));
        CHECK(bs.intervals[0].hi == doctest::Approx(2.0 + 2.0 * lambda).epsilon(1e-9));
    }
}

TEST_CASE("bloch oracle: q = 2 critical coupling fills [-2 sqrt 2, 2 sqrt 2]") {
    BandSet bs = band_set_bloch_oracle(1.0, 1, 2, 64);
    REQUIRE(bs.intervals.size() == 1);
    CHECK(bs.intervals[0].lo == doctest::Approx(-2.0 * std::sqrt(2.0)).epsilon(1e-9));
    CHECK(bs.intervals[0].hi == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("discriminant q = 1: h(E) = E with amplitude 2 lambda") {
    Discriminant d = discriminant_decompose(1.5, 0, 1);
    CHECK(d.amplitude() == doctest::Approx(3.0).epsilon(1e-12));
    for (double E : {-3.0, 0.0, 1.7}) CHECK(d.h(E) == doctest::Approx(E).epsilon(1e-10));
}

TEST_CASE("discriminant q = 2 critical: h(E) = E^2 - 4, amplitude 2") {
    Discriminant d = discriminant_decompose(1.0, 1, 2);
    CHECK(d.amplitude() == doctest::Approx(2.0).epsilon(1e-12));
    for (double E : {-2.0, 0.0, 0.9, 3.1})
        CHECK(d.h(E) == doctest::Approx(E * E - 4.0).epsilon(1e-10));
}

TEST_CASE("recovered amplitude equals 2 lambda^q") {
    for (double lambda : {0.5, 1.0, 2.0}) {
        for (long long q : {3LL, 5LL, 8LL, 12LL}) {
            long long p = 1;
            while (std::gcd(p, q) != 1) ++p;
            Discriminant d = discriminant_decompose(lambda, p, q);
            double expect = 2.0 * std::pow(lambda, static_cast<double>(q));
            CHECK(d.amplitude() == doctest::Approx(expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("trace split residual is tiny off the construction grid") {
    Discriminant d = discriminant_decompose(0.8, 3, 7);
    for (int i = 0; i < 5; ++i) {
        double omega = 0.0137 + i * 0.1931;
        for (int e = 0; e < 5; ++e) {
            double E = -3.5 + 1.6 * e;
            CHECK(d.residual(E, omega) < 1e-9 * (1.0 + std::fabs(d.h(E))));
        }
    }
}

TEST_CASE("the mean-of-traces evaluation agrees with the single-trace path") {
    Discriminant d = discriminant_decompose(1.2, 2, 5);
    for (double E : {-4.0, -1.0, 0.3, 2.9})
        CHECK(d.h(E) == doctest::Approx(d.h_mean(E)).epsilon(1e-11));
}

TEST_CASE("band edges solve h = +-(2 + 2 lambda^q)") {
    for (double lambda : {0.7, 1.0}) {
        for (long long q : {3LL, 5LL, 8LL}) {
            Discriminant d = discriminant_decompose(lambda, 1, q);
            double T = 2.0 + 2.0 * std::pow(lambda, static_cast<double>(q));
            BandSet bs = band_set(lambda, 1, q);
            for (const Interval& iv : bs.intervals) {
                CHECK(std::fabs(std::fabs(d.h(iv.lo)) - T) < 1e-9);
                CHECK(std::fabs(std::fabs(d.h(iv.hi)) - T) < 1e-9);
            }
        }
    }
}

TEST_CASE("band_set base cases") {
    BandSet q1 = band_set(1.3, 0, 1);
    REQUIRE(q1.intervals.size() == 1);
    CHECK(q1.intervals[0].lo == doctest::Approx(-4.6).epsilon(1e-10));
    CHECK(q1.intervals[0].hi == doctest::Approx(4.6).epsilon(1e-10));
    CHECK(measure(q1) == doctest::Approx(4.0 + 4.0 * 1.3).epsilon(1e-10));

    BandSet q2 = band_set(1.0, 1, 2);
    REQUIRE(q2.intervals.size() == 1);  // central gap collapsed, bands merged
    CHECK(q2.merged_gap_count == 1);
    CHECK(q2.intervals[0].lo == doctest::Approx(-2.0 * std::sqrt(2.0)).epsilon(1e-11));
    CHECK(q2.intervals[0].hi == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-11));
    CHECK(measure(q2) == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-10));
    CHECK(gaps(q2).empty());
}

TEST_CASE("band_set matches the bloch oracle across small periods") {
    for (double lambda : {0.5, 1.0, 2.0}) {
        for (long long q = 1; q <= 8; ++q) {
            for (long long p = (q == 1) ? 0 : 1; p < std::max<long long>(q, 1); ++p) {
                if (q > 1 && std::gcd(p, q) != 1) continue;
                BandSet direct = band_set(lambda, p, q);
                BandSet oracle = band_set_bloch_oracle(lambda, p, q, 64);
                CHECK(hausdorff_distance(direct, oracle) < 1e-3);
            }
        }
    }
}

TEST_CASE("gap parity: q = 2m+1 or 2m+2 yields exactly 2m gaps") {
    for (double lambda : {0.5, 1.0}) {
        for (long long q = 1; q <= 12; ++q) {
            for (long long p = (q == 1) ? 0 : 1; p < std::max<long long>(q, 1); ++p) {
                if (q > 1 && std::gcd(p, q) != 1) continue;
                long long m = (q % 2 == 1) ? (q - 1) / 2 : (q - 2) / 2;
                BandSet bs = band_set(lambda, p, q);
                CHECK(static_cast<long long>(gaps(bs).size()) == 2 * m);
            }
        }
    }
}

TEST_CASE("q = 3 has exactly two gaps with the stated length floor") {
    for (double lambda : {0.5, 1.0}) {
        BandSet bs = band_set(lambda, 1, 3);
        auto gs = gaps(bs);
        REQUIRE(gs.size() == 2);
        double floor_len = lambda * std::pow(8.0, -3.0);
        for (const Interval& g : gs) CHECK(g.length() >= floor_len - 1e-12);
    }
}

TEST_CASE("q = 5 critical: four gaps, length floor, neighbor within 8 pi / 5") {
    BandSet bs = band_set(1.0, 2, 5);
    auto gs = gaps(bs);
    REQUIRE(gs.size() == 4);
    for (const Interval& g : gs) CHECK(g.length() >= std::pow(8.0, -5.0) - 1e-12);
    double limit = 8.0 * 3.14159265358979323846 / 5.0;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        if (i > 0) nearest = std::min(nearest, gs[i].lo - gs[i - 1].hi);
        if (i + 1 < gs.size()) nearest = std::min(nearest, gs[i + 1].lo - gs[i].hi);
        CHECK(nearest <= limit);
    }
}

TEST_CASE("band sets are symmetric under E -> -E") {
    for (auto [p, q] : {std::pair<long long, long long>{1, 4}, {2, 7}, {3, 10}}) {
        BandSet bs = band_set(1.0, p, q);
        std::size_t nb = bs.intervals.size();
        for (std::size_t i = 0; i < nb; ++i) {
            CHECK(bs.intervals[i].lo ==
                  doctest::Approx(-bs.intervals[nb - 1 - i].hi).epsilon(1e-9));
        }
    }
}

TEST_CASE("critical measure shrinks along the golden convergents") {
    double m13 = measure(band_set(1.0, 5, 13));
    double m89 = measure(band_set(1.0, 34, 89));
    CHECK(m89 < m13);
}

TEST_CASE("hausdorff distance on closed interval unions") {
    BandSet a, b;
    a.intervals = {{0.0, 1.0}};
    b.intervals = {{0.0, 2.0}};
    CHECK(hausdorff_distance(a, a) == 0.0);
    CHECK(hausdorff_distance(a, b) == doctest::Approx(1.0));
    // midpoint of a gap matters for the directed part
    BandSet c, d;
    c.intervals = {{0.0, 4.0}};
    d.intervals = {{0.0, 1.0}, {3.0, 4.0}};
    CHECK(hausdorff_distance(c, d) == doctest::Approx(1.0));
}

TEST_CASE("continuity bound holds for neighboring Fibonacci rationals") {
    for (double lambda : {0.5, 1.0}) {
        BandSet a = band_set(lambda, 5, 13);
        BandSet b = band_set(lambda, 8, 21);
        double diff = std::fabs(5.0 / 13.0 - 8.0 / 21.0);
        CHECK(hausdorff_distance(a, b) <= 6.0 * std::sqrt(2.0 * lambda * diff));
    }
}

TEST_CASE("coupling scaling maps the band set exactly") {
    DualityScaleReport rep = duality_scale_check(2.0, 2, 5);
    CHECK(rep.distance < 1e-9);
    DualityScaleReport self = duality_scale_check(1.0, 1, 3);
    CHECK(self.distance < 1e-12);
    // q = 1 closed form: [-2-2l, 2+2l] = l [-2-2/l, 2+2/l]
    DualityScaleReport q1 = duality_scale_check(3.0, 0, 1);
    CHECK(q1.distance < 1e-10);
}

TEST_CASE("band computations reject invalid fractions") {
    CHECK_THROWS_AS(band_set(1.0, 2, 4), std::invalid_argument);
    CHECK_THROWS_AS(band_set(-1.0, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(gaps(BandSet{}), std::invalid_argument);
}
