#include <cmath>

#include "doctest.h"

#include "amo/angles.hpp"
#include "amo/lyapunov.hpp"
#include "amo/periodic.hpp"

using namespace amo;

namespace {
double golden() { return (std::sqrt(5.0) - 1.0) / 2.0; }
}

TEST_CASE("orbit estimate at very large energy tracks log|E|") {
    Parameters par(1.0, golden(), 0.2);
    double E = 1000.0;
    LyapunovEstimate est = lyapunov_orbit(par, E, 20000);
    // oracle: one-step growth is dominated by |E - V|
    KahanAccumulator acc;
    for (long long m = 1; m <= 20000; ++m) acc.add(std::log(std::fabs(E - potential(par, m))));
    double oracle = acc.value() / 20000.0;
    CHECK(std::fabs(est.value - oracle) < 0.01 * oracle);
}

TEST_CASE("orbit estimates are Cauchy in n within the empirical spread") {
    Parameters par(2.0, golden(), 0.37);
    double E = 0.5;
    LyapunovEstimate a = lyapunov_orbit(par, E, 50000);
    LyapunovEstimate b = lyapunov_orbit(par, E, 100000);
    CHECK(std::fabs(a.value - b.value) <= 3.0 * std::max(a.stderr_, 1e-4));
}

TEST_CASE("phase average respects the coupling lower bound") {
    LyapunovEstimate est = lyapunov_phase_average(3.0, golden(), 0.8, 2000, 128);
    CHECK(est.value >= std::log(3.0) - 0.02);
    CHECK(est.method == "phase_average");
}

TEST_CASE("critical coupling at the band center has vanishing exponent") {
    LyapunovEstimate est = lyapunov_phase_average(1.0, golden(), 0.0, 4000, 128);
    CHECK(std::fabs(est.value) < 0.05);
}

TEST_CASE("phase-grid refinement is converged") {
    double a = lyapunov_phase_average(1.5, golden(), 0.3, 2000, 256).value;
    double b = lyapunov_phase_average(1.5, golden(), 0.3, 2000, 512).value;
    CHECK(std::fabs(a - b) < 1e-3);
}

TEST_CASE("average at n is an upper bound drifting down toward the limit") {
    for (double lambda : {0.5, 1.0, 2.0}) {
        LyapunovEstimate a = lyapunov_phase_average(lambda, golden(), 0.4, 1000, 128);
        LyapunovEstimate b = lyapunov_phase_average(lambda, golden(), 0.4, 2000, 128);
        CHECK(a.value >= b.value - 0.05);
        CHECK(std::fabs(a.value - b.value) <= std::max({a.stderr_, b.stderr_, 5e-3}));
    }
}

TEST_CASE("serial and parallel phase averages are bit-identical") {
    std::vector<double> energies{-1.0, 0.2, 2.5};
    auto par = lyapunov_phase_average_sweep(1.7, golden(), energies, 1500, 128, Exec::parallel);
    auto ser = lyapunov_phase_average_sweep(1.7, golden(), energies, 1500, 128, Exec::serial);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].value == ser[i].value);
        CHECK(par[i].stderr_ == ser[i].stderr_);
    }
}

TEST_CASE("duality shifts the exponent by log lambda on the spectrum") {
    // gamma_lambda(E) - gamma_{1/lambda}(E/lambda) = log lambda
    BandSet bands = band_set(2.0, 8, 13);
    double E = 0.5 * (bands.intervals[6].lo + bands.intervals[6].hi);
    Parameters phigh(2.0, golden(), 0.41);
    Parameters plow(0.5, golden(), 0.41);
    LyapunovEstimate ghigh = lyapunov_orbit(phigh, E, 100000);
    LyapunovEstimate glow = lyapunov_orbit(plow, E / 2.0, 100000);
    CHECK(std::fabs(ghigh.value - glow.value - std::log(2.0)) < 0.05);
}

TEST_CASE("subharmonic bound: supercritical margin is positive") {
    HermanReport rep = herman_subharmonic_check(2.0, golden(), 0.0, 50, 512);
    CHECK(rep.lhs_average >= 50.0 * std::log(2.0));
    CHECK(rep.margin > 0.0);
    CHECK(rep.n0_log_norm == doctest::Approx(rep.rhs).epsilon(1e-10));
}

TEST_CASE("subharmonic bound at critical coupling reduces to norm >= 1") {
    HermanReport rep = herman_subharmonic_check(1.0, golden(), 0.7, 60, 256);
    CHECK(rep.rhs == 0.0);
    CHECK(rep.lhs_average >= 0.0);
}

TEST_CASE("the factored product on the circle matches the real monodromy norm") {
    HermanReport rep = herman_subharmonic_check(1.7, golden(), -0.9, 80, 128);
    CHECK(rep.max_identity_gap < 1e-9 * 80.0);
}

TEST_CASE("herman margin is nonnegative across couplings and energies") {
    for (double lambda : {1.5, 2.0, 4.0}) {
        for (int i = 0; i < 8; ++i) {
            double bound = 2.0 + 2.0 * lambda;
            double E = -bound + 2.0 * bound * (i + 0.5) / 8.0;
            HermanReport rep = herman_subharmonic_check(lambda, golden(), E, 100, 256);
            CHECK(rep.margin >= 0.0);
        }
    }
}

TEST_CASE("herman check enforces its raw-product cap") {
    CHECK_THROWS_AS(herman_subharmonic_check(2.0, golden(), 0.0, 600, 64),
                    std::invalid_argument);
}
