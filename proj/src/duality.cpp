#include "amo/duality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "amo/angles.hpp"

namespace amo {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

DualSolution dual_solution(std::span<const double> u, long long n1, double omega_tilde,
                           double omega, double alpha, double lambda, double E,
                           long long window) {
    if (u.size() < 3) throw std::invalid_argument("dual_solution: sequence too short");
    double umax = 0.0;
    for (double x : u) umax = std::max(umax, std::fabs(x));
    if (umax == 0.0) throw std::invalid_argument("dual_solution: zero sequence");
    double tail = std::max(std::fabs(u.front()), std::fabs(u.back()));
    if (tail >= 1e-8 * umax)
        throw std::invalid_argument(
            "dual_solution: insufficient decay at the window edge, tail/max = " +
            std::to_string(tail / umax));

    DualSolution out;
    out.window = window;
    // u_hat as a Fourier series indexed by the lattice sites
    long long n2 = n1 + static_cast<long long>(u.size()) - 1;
    int K = static_cast<int>(std::max(std::llabs(n1), std::llabs(n2)));
    out.u_hat = FourierSeries(K);
    for (std::size_t i = 0; i < u.size(); ++i) {
        long long m = n1 + static_cast<long long>(i);
        out.u_hat.set_coeff(static_cast<int>(m), out.u_hat.coeff(static_cast<int>(m)) + u[i]);
    }
    out.u_hat = out.u_hat.truncated(1e-300);  // drop the all-zero skirt only

    // u~(n) on [-window-1, window+1]; one extra site each side for the defect
    std::vector<std::complex<double>> ext(static_cast<std::size_t>(2 * window + 3));
    auto ext_at = [&](long long n) -> std::complex<double>& {
        return ext[static_cast<std::size_t>(n + window + 1)];
    };
    for (long long n = -window - 1; n <= window + 1; ++n) {
        double theta = frac_mul_add(omega_tilde, n, alpha);
        std::complex<double> phase(std::cos(kTwoPi * static_cast<double>(n) * omega),
                                   std::sin(kTwoPi * static_cast<double>(n) * omega));
        ext_at(n) = out.u_hat.evaluate(theta) * phase;
    }
    out.values.assign(ext.begin() + 1, ext.end() - 1);
    for (const auto& z : out.values) out.max_abs = std::max(out.max_abs, std::abs(z));

    const double dual_coupling = 1.0 / lambda;
    const double dual_energy = E / lambda;
    double worst = 0.0;
    for (long long n = -window; n <= window; ++n) {
        double v = 2.0 * dual_coupling * std::cos(kTwoPi * frac_mul_add(omega_tilde, n, alpha));
        std::complex<double> defect =
            ext_at(n + 1) + ext_at(n - 1) + (v - dual_energy) * ext_at(n);
        worst = std::max(worst, std::abs(defect));
    }
    out.residual = worst;
    return out;
}

CohomologicalSolution cohomological_solve(const FourierSeries& ctilde, double alpha,
                                          int residual_grid) {
    CohomologicalSolution out;
    const int K = ctilde.degree();
    out.c = ctilde.coeff(0).real();
    out.b = FourierSeries(K);
    out.min_divisor = std::numeric_limits<double>::infinity();
    for (int k = -K; k <= K; ++k) {
        if (k == 0) continue;
        std::complex<double> ck = ctilde.coeff(k);
        double ang = kTwoPi * frac_mul_add(0.0, k, alpha);
        std::complex<double> divisor =
            std::complex<double>(std::cos(ang) - 1.0, std::sin(ang));
        double mag = std::abs(divisor);
        if (std::abs(ck) > 0.0 && mag < out.min_divisor) {
            out.min_divisor = mag;
            out.min_divisor_k = k;
        }
        if (std::abs(ck) > 0.0 && mag < 1e-13) throw SmallDivisorError(k, mag);
        out.b.set_coeff(k, (mag == 0.0) ? std::complex<double>(0.0, 0.0) : ck / divisor);
    }
    double worst = 0.0;
    for (int j = 0; j < residual_grid; ++j) {
        double w = static_cast<double>(j) / residual_grid;
        std::complex<double> lhs = out.b.evaluate(frac(w + alpha)) - out.b.evaluate(w);
        std::complex<double> rhs = ctilde.evaluate(w) - out.c;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    out.residual = worst;
    return out;
}

namespace {

struct GridConjugation {
    double c = 0.0;
    double residual = 0.0;
    double det_dev = 0.0;
    double d_min = 0.0;
    double intertwine = 0.0;
    FourierSeries B11, B12, B21, B22;
};

GridConjugation conjugate_on_grid(const FourierSeries& v1, const FourierSeries& v2,
                                  const std::function<Mat2(double)>& A, double alpha,
                                  int grid) {
    GridConjugation out;
    const std::size_t n = 2 * static_cast<std::size_t>(grid / 2) + 1;  // odd sample count

    out.d_min = std::numeric_limits<double>::infinity();
    out.intertwine = 0.0;
    std::vector<std::complex<double>> s11(n), s12(n), s21(n), s22(n), ct(n);
    for (std::size_t j = 0; j < n; ++j) {
        double w = static_cast<double>(j) / static_cast<double>(n);
        double x1 = v1.evaluate_real(w), x2 = v2.evaluate_real(w);
        double d = x1 * x1 + x2 * x2;
        out.d_min = std::min(out.d_min, d);
        if (d < 1e-10)
            throw std::invalid_argument("reducibility_conjugate: v vanishes on the grid");
        Mat2 Aw = A(w);
        auto img = Aw.apply(x1, x2);
        double y1 = v1.evaluate_real(frac(w + alpha)), y2 = v2.evaluate_real(frac(w + alpha));
        out.intertwine = std::max(out.intertwine, std::hypot(img[0] - y1, img[1] - y2));
        // B1 = ((v1, -v2/d), (v2, v1/d)), det = 1 identically
        s11[j] = x1;
        s12[j] = -x2 / d;
        s21[j] = x2;
        s22[j] = x1 / d;
        // ctilde = (1,2) entry of B1(w+alpha)^{-1} A(w) B1(w)
        double d_sh = y1 * y1 + y2 * y2;
        Mat2 B1_sh{y1, -y2 / d_sh, y2, y1 / d_sh};
        Mat2 B1{x1, -x2 / d, x2, x1 / d};
        Mat2 conj = B1_sh.inverse_unimodular() * Aw * B1;
        ct[j] = conj.b;
    }
    if (out.intertwine > 1e-8)
        throw std::invalid_argument(
            "reducibility_conjugate: v does not intertwine A within 1e-8, residual = " +
            std::to_string(out.intertwine));

    FourierSeries ctilde = fourier_from_samples(ct).truncated(1e-14);
    CohomologicalSolution coh = cohomological_solve(ctilde, alpha,
                                                    static_cast<int>(n));
    out.c = coh.c;

    // B = B1 * B2 with B2 = ((1, b), (0, 1)); sample and interpolate
    std::vector<std::complex<double>> t11(n), t12(n), t21(n), t22(n);
    for (std::size_t j = 0; j < n; ++j) {
        double w = static_cast<double>(j) / static_cast<double>(n);
        double bw = coh.b.evaluate(w).real();
        t11[j] = s11[j];
        t12[j] = s11[j] * bw + s12[j];
        t21[j] = s21[j];
        t22[j] = s21[j] * bw + s22[j];
    }
    out.B11 = fourier_from_samples(t11).truncated(1e-14);
    out.B12 = fourier_from_samples(t12).truncated(1e-14);
    out.B21 = fourier_from_samples(t21).truncated(1e-14);
    out.B22 = fourier_from_samples(t22).truncated(1e-14);

    // conjugation residual on a grid offset from the sampling grid
    double worst = 0.0, det_dev = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double w = frac((static_cast<double>(j) + 0.37) / static_cast<double>(n));
        Mat2 B{out.B11.evaluate_real(w), out.B12.evaluate_real(w),
               out.B21.evaluate_real(w), out.B22.evaluate_real(w)};
        double ws = frac(w + alpha);
        Mat2 Bs{out.B11.evaluate_real(ws), out.B12.evaluate_real(ws),
                out.B21.evaluate_real(ws), out.B22.evaluate_real(ws)};
        Mat2 conj = Bs.inverse_unimodular() * A(w) * B;
        det_dev = std::max(det_dev, std::fabs(B.det() - 1.0));
        double r = std::max(std::max(std::fabs(conj.a - 1.0), std::fabs(conj.b - out.c)),
                            std::max(std::fabs(conj.c), std::fabs(conj.d - 1.0)));
        worst = std::max(worst, r);
    }
    out.residual = worst;
    out.det_dev = det_dev;
    return out;
}

}  // namespace

Mat2 ConjugationResult::evaluate_B(double omega) const {
    return {B11.evaluate_real(omega), B12.evaluate_real(omega),
            B21.evaluate_real(omega), B22.evaluate_real(omega)};
}

ConjugationResult reducibility_conjugate(const FourierSeries& v1, const FourierSeries& v2,
                                         const std::function<Mat2(double)>& A, double alpha,
                                         int grid) {
    // the sampling must resolve the harmonics of v and of 1/d; anchor the
    // grid to the section's bandwidth, then double until the residual is
    // stable within a factor of 2
    grid = std::max(grid, 6 * std::max(v1.degree(), v2.degree()) + 1);
    GridConjugation cur = conjugate_on_grid(v1, v2, A, alpha, grid);
    for (int doublings = 0; doublings < 3; ++doublings) {
        GridConjugation next = conjugate_on_grid(v1, v2, A, alpha, grid * 2);
        bool stable = next.residual <= 2.0 * cur.residual && cur.residual <= 2.0 * next.residual;
        if (next.residual < cur.residual) {
            cur = next;
            grid *= 2;
        }
        if (stable) break;
    }
    ConjugationResult out;
    out.B11 = cur.B11;
    out.B12 = cur.B12;
    out.B21 = cur.B21;
    out.B22 = cur.B22;
    out.c = cur.c;
    out.residual = cur.residual;
    out.det_deviation = cur.det_dev;
    out.d_min = cur.d_min;
    out.intertwine_residual = cur.intertwine;
    out.grid = grid;
    return out;
}

BlochProfile bloch_profile_from_eigenvector(const EigenPair& pair) {
    const long long len = static_cast<long long>(pair.vector.size());
    const long long n2 = pair.n1 + len - 1;
    if (pair.n1 + n2 != 0)
        throw std::invalid_argument("bloch_profile: interval must be symmetric about 0");
    const long long M = n2;
    auto u = [&](long long n) { return pair.vector[static_cast<std::size_t>(n - pair.n1)]; };
    double norm_even = 0.0, norm_odd = 0.0;
    for (long long n = -M; n <= M; ++n) {
        double even = 0.5 * (u(n) + u(-n));
        double odd = 0.5 * (u(n) - u(-n));
        norm_even += even * even;
        norm_odd += odd * odd;
    }
    BlochProfile out;
    out.antisymmetric = norm_odd > norm_even;
    double keep = std::sqrt(std::max(norm_even, norm_odd));
    double drop = std::sqrt(std::min(norm_even, norm_odd));
    out.symmetry_defect = (keep > 0.0) ? drop / keep : 1.0;
    out.g = FourierSeries(static_cast<int>(M));
    if (!out.antisymmetric) {
        // g(w) = u(0) + 2 sum_{m>0} u_even(m) cos(2 pi m w)
        out.g.set_coeff(0, u(0) / keep);
        for (long long m = 1; m <= M; ++m) {
            double cm = 0.5 * (u(m) + u(-m)) / keep;
            out.g.set_coeff(static_cast<int>(m), cm);
            out.g.set_coeff(static_cast<int>(-m), cm);
        }
    } else {
        // g(w) = 2 sum_{m>0} u_odd(m) sin(2 pi m w)
        for (long long m = 1; m <= M; ++m) {
            double cm = 0.5 * (u(m) - u(-m)) / keep;
            out.g.set_coeff(static_cast<int>(m), std::complex<double>(0.0, -cm));
            out.g.set_coeff(static_cast<int>(-m), std::complex<double>(0.0, cm));
        }
    }
    out.g = out.g.truncated(1e-300);
    return out;
}

std::vector<EigenPair> reflection_centered_pairs(const Parameters& par, long long M,
                                                 long long max_center,
                                                 unsigned long long seed) {
    FiniteRestriction r = FiniteRestriction::build(par, -M, M);
    std::vector<EigenPair> out;
    for (long long s = 0; s <= max_center; ++s) {
        double E0 = potential(par, s);
        double lo = E0 - 0.75, hi = E0 + 0.75;
        int count = sturm_count_below(r.diagonal, r.off, hi) -
                    sturm_count_below(r.diagonal, r.off, lo);
        if (count <= 0 || count > 120) continue;
        for (EigenPair& p : eigenpairs(r, lo, hi, seed)) {
            if (!p.converged || std::llabs(p.center) > max_center) continue;
            out.push_back(std::move(p));
        }
    }
    std::sort(out.begin(), out.end(), [](const EigenPair& a, const EigenPair& b) {
        if (std::llabs(a.center) != std::llabs(b.center))
            return std::llabs(a.center) < std::llabs(b.center);
        return a.energy < b.energy;
    });
    // the same state appears once per overlapping window
    out.erase(std::unique(out.begin(), out.end(),
                          [](const EigenPair& a, const EigenPair& b) {
                              return std::fabs(a.energy - b.energy) < 1e-11;
                          }),
              out.end());
    return out;
}

std::function<Mat2(double)> dual_cocycle(double lambda, double E) {
    double dual_coupling = 1.0 / lambda;
    double dual_energy = E / lambda;
    return [dual_coupling, dual_energy](double omega) {
        return Mat2{dual_energy - 2.0 * dual_coupling * std::cos(kTwoPi * omega), -1.0, 1.0,
                    0.0};
    };
}

GapEdgeReport gap_edge_probe(double lambda, double alpha, long long p, long long q,
                             const EigenPair& pair) {
    if (!(lambda > 1.0)) throw std::invalid_argument("gap_edge_probe: lambda must exceed 1");
    GapEdgeReport rep;
    rep.E = pair.energy;
    rep.dual_energy = pair.energy / lambda;

    BlochProfile prof = bloch_profile_from_eigenvector(pair);
    FourierSeries v1 = prof.g;
    // v2(w) = g(w - alpha)
    FourierSeries v2(v1.degree());
    for (int k = -v1.degree(); k <= v1.degree(); ++k) {
        double ang = -kTwoPi * frac_mul_add(0.0, k, alpha);
        v2.set_coeff(k, v1.coeff(k) * std::complex<double>(std::cos(ang), std::sin(ang)));
    }
    ConjugationResult conj =
        reducibility_conjugate(v1, v2, dual_cocycle(lambda, pair.energy), alpha);
    rep.c = conj.c;
    rep.conjugation_residual = conj.residual;

    BandSet dual_bands = band_set(1.0 / lambda, p, q);
    double best = std::numeric_limits<double>::infinity();
    for (const Interval& iv : dual_bands.intervals) {
        if (std::fabs(rep.dual_energy - iv.lo) < best) {
            best = std::fabs(rep.dual_energy - iv.lo);
            rep.nearest_edge = iv.lo;
            rep.nearest_is_left_edge = true;
        }
        if (std::fabs(rep.dual_energy - iv.hi) < best) {
            best = std::fabs(rep.dual_energy - iv.hi);
            rep.nearest_edge = iv.hi;
            rep.nearest_is_left_edge = false;
        }
    }
    rep.edge_distance = best;
    double alpha_err = std::fabs(alpha - static_cast<double>(p) / static_cast<double>(q));
    rep.error_bound = 6.0 * std::sqrt(2.0 * (1.0 / lambda) * alpha_err);
    rep.within_bound = rep.edge_distance <= rep.error_bound;
    // delta c < 0 removes the spectrum on the side sign(delta) = -sign(c):
    // c > 0 opens the gap below the dual energy, i.e. at a band's left edge
    rep.expected_left_edge = (rep.c > 0.0) ? 1 : -1;
    rep.side_matches = (rep.expected_left_edge == 1) == rep.nearest_is_left_edge;
    return rep;
}

}  // namespace amo
