#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"

#include "amo/angles.hpp"
#include "amo/duality.hpp"
#include "amo/rng.hpp"

using namespace amo;

namespace {
double golden() { return (std::sqrt(5.0) - 1.0) / 2.0; }
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<EigenPair> localized_pairs(double lambda, double omega, long long M, int count) {
    Parameters par(lambda, golden(), omega);
    FiniteRestriction r = FiniteRestriction::build(par, -M, M);
    double lo, hi;
    gershgorin_bounds(r.diagonal, r.off, lo, hi);
    int median = r.size() / 2;
    auto values = sturm_eigenvalues_by_index(r.diagonal, r.off, median - 10, median + 10,
                                             lo, hi, 1e-12);
    auto pairs = eigenpairs(r, values.front() - 1e-9, values.back() + 1e-9);
    std::vector<EigenPair> out;
    for (auto& p : pairs)
        if (p.converged && std::llabs(p.center) < M - M / 4) {
            out.push_back(std::move(p));
            if (static_cast<int>(out.size()) == count) break;
        }
    return out;
}

}  // namespace

TEST_CASE("fourier interpolation: pure cosine and constant") {
    FourierSeries cosw = fourier_from_function(
        [](double w) { return std::complex<double>(std::cos(kTwoPi * w), 0.0); }, 8);
    CHECK(std::abs(cosw.coeff(1) - 0.5) < 1e-12);
    CHECK(std::abs(cosw.coeff(-1) - 0.5) < 1e-12);
    for (int k = -8; k <= 8; ++k)
        if (k != 1 && k != -1) CHECK(std::abs(cosw.coeff(k)) < 1e-12);

    FourierSeries c = fourier_from_function(
        [](double) { return std::complex<double>(0.7, 0.0); }, 4);
    CHECK(std::abs(c.coeff(0) - 0.7) < 1e-13);
    for (int k = 1; k <= 4; ++k) CHECK(std::abs(c.coeff(k)) < 1e-13);
}

TEST_CASE("fourier round trip is exact for trigonometric polynomials") {
    auto rng = make_rng(3, 0);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const int K = 12;
    FourierSeries truth(K);
    truth.set_coeff(0, uni(rng));
    for (int k = 1; k <= K; ++k) {
        std::complex<double> ck(uni(rng), uni(rng));
        truth.set_coeff(k, ck);
        truth.set_coeff(-k, std::conj(ck));
    }
    FourierSeries rec = fourier_from_function(
        [&](double w) { return truth.evaluate(w); }, K);
    for (int k = -K; k <= K; ++k) CHECK(std::abs(rec.coeff(k) - truth.coeff(k)) < 1e-12);
    // inverse evaluation reproduces the samples
    const int n = 2 * K + 1;
    for (int j = 0; j < n; ++j) {
        double w = static_cast<double>(j) / n;
        CHECK(std::abs(rec.evaluate(w) - truth.evaluate(w)) < 1e-12);
    }
    CHECK(rec.is_real_valued());
}

TEST_CASE("coefficient decay fitting") {
    const int K = 30;
    FourierSeries s(K);
    for (int k = -K; k <= K; ++k)
        s.set_coeff(k, std::exp(-0.8 * std::fabs(static_cast<double>(k))));
    CHECK(s.fitted_decay_rate() == doctest::Approx(0.8).epsilon(1e-6));
    CHECK(s.strip_estimate() == doctest::Approx(0.8 / kTwoPi).epsilon(1e-6));
}

TEST_CASE("dual of a point mass is the plane wave with its closed-form defect") {
    std::vector<double> u{0.0, 1.0, 0.0};  // delta at 0 on [-1, 1]
    double omega = 0.23, omega_tilde = 0.41, lambda = 2.0, E = 0.7;
    DualSolution ds = dual_solution(u, -1, omega_tilde, omega, golden(), lambda, E, 20);
    // u_hat = 1, so u~(n) = e^{2 pi i n omega} and the defect at site n is
    // |2 cos(2 pi w) + (2/l) cos(2 pi (wt + n a)) - E/l|
    double worst = 0.0;
    for (long long n = -20; n <= 20; ++n) {
        double v = 2.0 * std::cos(kTwoPi * omega) +
                   (2.0 / lambda) * std::cos(kTwoPi * frac_mul_add(omega_tilde, n, golden())) -
                   E / lambda;
        worst = std::max(worst, std::fabs(v));
    }
    CHECK(ds.residual == doctest::Approx(worst).epsilon(1e-10));
    CHECK(ds.max_abs == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("duality residual is linear in the sequence scale") {
    std::vector<double> u{0.0, 1.0, 0.0};
    std::vector<double> u5{0.0, 5.0, 0.0};
    DualSolution a = dual_solution(u, -1, 0.3, 0.1, golden(), 2.0, 0.4, 10);
    DualSolution b = dual_solution(u5, -1, 0.3, 0.1, golden(), 2.0, 0.4, 10);
    CHECK(b.residual == doctest::Approx(5.0 * a.residual).epsilon(1e-12));
}

TEST_CASE("dual sequence of a localized eigenpair solves the dual equation") {
    auto pairs = localized_pairs(3.0, 0.0, 400, 2);
    REQUIRE(!pairs.empty());
    for (const auto& p : pairs) {
        DualSolution ds = dual_solution(p.vector, p.n1, 0.3, 0.0, golden(), 3.0,
                                        p.energy, 50);
        CHECK(ds.residual < 1e-6 * ds.max_abs);
    }
}

TEST_CASE("duality residual tracks the truncation tail mass") {
    auto pairs = localized_pairs(3.0, 0.0, 400, 1);
    REQUIRE(!pairs.empty());
    const EigenPair& p = pairs.front();
    // truncate around the center at widths M: tail falls exponentially and
    // the dual defect must follow it linearly (within a broad constant)
    std::vector<double> ratios;
    for (long long M : {12LL, 16LL, 20LL}) {
        long long c = p.center - p.n1;
        std::vector<double> cut(p.vector.begin() + (c - M), p.vector.begin() + (c + M + 1));
        double umax = 0.0;
        for (double x : cut) umax = std::max(umax, std::fabs(x));
        double tail = std::max(std::fabs(cut.front()), std::fabs(cut.back())) / umax;
        if (tail >= 1e-8) continue;  // precondition guard
        DualSolution ds = dual_solution(cut, -M, 0.3, 0.0, golden(), 3.0, p.energy, 30);
        ratios.push_back(ds.residual / (tail * umax));
    }
    REQUIRE(ratios.size() >= 2);
    for (std::size_t i = 1; i < ratios.size(); ++i) {
        CHECK(ratios[i] / ratios[0] < 100.0);
        CHECK(ratios[i] / ratios[0] > 0.01);
    }
}

TEST_CASE("insufficient decay is rejected with the measured tail") {
    std::vector<double> u(21, 1.0);  // no decay at all
    CHECK_THROWS_AS(dual_solution(u, -10, 0.3, 0.0, golden(), 2.0, 0.0, 5),
                    std::invalid_argument);
}

TEST_CASE("cohomological equation: single harmonic closed form") {
    FourierSeries ct(1);
    ct.set_coeff(1, 0.5);
    ct.set_coeff(-1, 0.5);  // cos(2 pi w)
    CohomologicalSolution sol = cohomological_solve(ct, golden(), 512);
    CHECK(sol.c == doctest::Approx(0.0));
    std::complex<double> divisor = std::exp(std::complex<double>(0.0, kTwoPi * golden())) - 1.0;
    CHECK(std::abs(sol.b.coeff(1) - 0.5 / divisor) < 1e-12);
    CHECK(sol.residual < 1e-10);
}

TEST_CASE("constant right-hand side solves with b = 0") {
    FourierSeries ct(0);
    ct.set_coeff(0, 1.37);
    CohomologicalSolution sol = cohomological_solve(ct, golden(), 64);
    CHECK(sol.c == doctest::Approx(1.37));
    CHECK(sol.b.max_abs_coeff() == 0.0);
    CHECK(sol.residual < 1e-14);
}

TEST_CASE("solution coefficients keep a positive decay rate") {
    auto rng = make_rng(5, 1);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int K = 40;
    FourierSeries ct(K);
    for (int k = 1; k <= K; ++k) {
        double mag = std::exp(-0.9 * k);
        double ph = kTwoPi * uni(rng);
        std::complex<double> c(mag * std::cos(ph), mag * std::sin(ph));
        ct.set_coeff(k, c);
        ct.set_coeff(-k, std::conj(c));
    }
    CohomologicalSolution sol = cohomological_solve(ct, golden(), 512);
    double rate_in = ct.fitted_decay_rate();
    double rate_out = sol.b.fitted_decay_rate();
    CHECK(rate_out > 0.5 * rate_in);
    CHECK(rate_out <= rate_in + 0.05);
    CHECK(sol.residual < 1e-9);
}

TEST_CASE("a resonant divisor is reported with the offending index") {
    FourierSeries ct(2);
    ct.set_coeff(2, 0.25);
    ct.set_coeff(-2, 0.25);
    try {
        cohomological_solve(ct, 0.5, 64);  // e^{2 pi i (1/2) 2} = 1 exactly
        FAIL("expected SmallDivisorError");
    } catch (const SmallDivisorError& e) {
        CHECK(std::abs(e.k) == 2);
        CHECK(e.divisor < 1e-13);
    }
}

namespace {

Mat2 b_true(double w) {
    double th = 0.4 * std::sin(kTwoPi * w + 0.7);
    double sh = 0.3 * std::cos(kTwoPi * w);
    Mat2 rot{std::cos(th), -std::sin(th), std::sin(th), std::cos(th)};
    Mat2 shear{1.0, sh, 0.0, 1.0};
    return rot * shear;
}

}  // namespace

TEST_CASE("construct-then-recover conjugation") {
    const double alpha = golden();
    const double c_true = 0.55;
    auto A = [&](double w) {
        Mat2 C{1.0, c_true, 0.0, 1.0};
        return b_true(frac(w + alpha)) * C * b_true(w).inverse_unimodular();
    };
    FourierSeries v1 = fourier_from_function(
        [&](double w) { return std::complex<double>(b_true(w).a, 0.0); }, 64);
    FourierSeries v2 = fourier_from_function(
        [&](double w) { return std::complex<double>(b_true(w).c, 0.0); }, 64);
    ConjugationResult conj = reducibility_conjugate(v1, v2, A, alpha, 512);
    CHECK(std::fabs(conj.c - c_true) < 1e-8);
    CHECK(conj.residual < 1e-7);
    CHECK(conj.det_deviation < 1e-8);
    CHECK(conj.d_min > 1e-10);

    // degenerate constant: c = 0
    auto A0 = [&](double w) { return b_true(frac(w + alpha)) * b_true(w).inverse_unimodular(); };
    ConjugationResult conj0 = reducibility_conjugate(v1, v2, A0, alpha, 512);
    CHECK(std::fabs(conj0.c) < 1e-8);
}

TEST_CASE("conjugation rejects a vanishing section") {
    FourierSeries v1(1), v2(1);
    v1.set_coeff(1, 0.5);
    v1.set_coeff(-1, 0.5);  // cos vanishes at w = 1/4
    v2.set_coeff(0, 0.0);
    auto A = [](double) { return Mat2::identity(); };
    CHECK_THROWS_AS(reducibility_conjugate(v1, v2, A, golden(), 128), std::invalid_argument);
}

TEST_CASE("bloch profile splits symmetric and antisymmetric parts") {
    EigenPair sym;
    sym.n1 = -100;
    sym.vector.resize(201);
    for (int n = -100; n <= 100; ++n)
        sym.vector[static_cast<std::size_t>(n + 100)] = std::exp(-0.3 * std::fabs(n));
    BlochProfile ps = bloch_profile_from_eigenvector(sym);
    CHECK_FALSE(ps.antisymmetric);
    CHECK(ps.symmetry_defect < 1e-14);
    CHECK(ps.g.is_real_valued(1e-12));

    EigenPair anti = sym;
    for (int n = -100; n < 0; ++n)
        anti.vector[static_cast<std::size_t>(n + 100)] *= -1.0;
    anti.vector[100] = 0.0;
    BlochProfile pa = bloch_profile_from_eigenvector(anti);
    CHECK(pa.antisymmetric);
    CHECK(pa.g.is_real_valued(1e-12));
}

TEST_CASE("end-to-end reducibility of a reflection-centered eigenpair gives c away from zero") {
    // a state centered d sites off the axis forms a mirror doublet split like
    // e^{-2 gamma d}; at machine degeneracy the cocycle has two sections and
    // c collapses, so the honest nonzero-c instances sit on the axis
    Parameters par(3.0, golden(), 0.0);
    auto pairs = reflection_centered_pairs(par, 300, 3);
    REQUIRE(!pairs.empty());
    bool done = false;
    for (const auto& p : pairs) {
        BlochProfile prof = bloch_profile_from_eigenvector(p);
        if (prof.symmetry_defect > 0.9) continue;
        FourierSeries v1 = prof.g;
        FourierSeries v2(v1.degree());
        for (int k = -v1.degree(); k <= v1.degree(); ++k) {
            double ang = -kTwoPi * frac_mul_add(0.0, k, golden());
            v2.set_coeff(k, v1.coeff(k) * std::complex<double>(std::cos(ang), std::sin(ang)));
        }
        try {
            ConjugationResult conj =
                reducibility_conjugate(v1, v2, dual_cocycle(3.0, p.energy), golden(), 512);
            CHECK(std::fabs(conj.c) > 1e-4);
            CHECK(conj.residual < 1e-8);
            done = true;
            break;
        } catch (const std::invalid_argument&) {
            continue;
        }
    }
    CHECK(done);
}

TEST_CASE("the conjugation constant of a mirror doublet collapses to zero") {
    auto pairs = localized_pairs(3.0, 0.0, 400, 8);
    bool seen = false;
    for (const auto& p : pairs) {
        if (std::llabs(p.center) < 40) continue;  // want a far doublet
        BlochProfile prof = bloch_profile_from_eigenvector(p);
        FourierSeries v1 = prof.g;
        FourierSeries v2(v1.degree());
        for (int k = -v1.degree(); k <= v1.degree(); ++k) {
            double ang = -kTwoPi * frac_mul_add(0.0, k, golden());
            v2.set_coeff(k, v1.coeff(k) * std::complex<double>(std::cos(ang), std::sin(ang)));
        }
        try {
            ConjugationResult conj =
                reducibility_conjugate(v1, v2, dual_cocycle(3.0, p.energy), golden(), 512);
            CHECK(std::fabs(conj.c) < 1e-6);
            CHECK(conj.residual < 1e-5);
            seen = true;
            break;
        } catch (const std::invalid_argument&) {
            continue;
        }
    }
    CHECK(seen);
}

TEST_CASE("gap edge probe places the dual energy within the continuity radius") {
    Parameters par(3.0, golden(), 0.0);
    auto pairs = reflection_centered_pairs(par, 300, 3);
    REQUIRE(!pairs.empty());
    bool probed = false;
    for (const auto& p : pairs) {
        try {
            GapEdgeReport rep = gap_edge_probe(3.0, golden(), 34, 89, p);
            CHECK(rep.dual_energy == doctest::Approx(p.energy / 3.0));
            CHECK(rep.within_bound);
            CHECK(std::fabs(rep.c) > 1e-6);
            probed = true;
            break;
        } catch (const std::invalid_argument&) {
            continue;
        }
    }
    CHECK(probed);
}

TEST_CASE("gap edge probe requires supercritical coupling") {
    EigenPair dummy;
    dummy.n1 = -1;
    dummy.vector = {0.0, 1.0, 0.0};
    CHECK_THROWS_AS(gap_edge_probe(1.0, golden(), 3, 5, dummy), std::invalid_argument);
}
