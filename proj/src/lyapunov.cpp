#include "amo/lyapunov.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "amo/angles.hpp"

namespace amo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kRenormCadence = 64;

// growth of one phase over n steps given its sampled potential row
double phase_log_norm(std::span<const double> v_row, double E) {
    Mat2 m = Mat2::identity();
    KahanAccumulator scale;
    const long long n = static_cast<long long>(v_row.size());
    for (long long step = 0; step < n; ++step) {
        double t = E - v_row[static_cast<std::size_t>(step)];
        double na = t * m.a - m.c, nb = t * m.b - m.d;
        m = {na, nb, m.a, m.b};
        if ((step + 1) % kRenormCadence == 0) {
            double mx = m.max_abs();
            if (mx > 0.0) {
                m = m.scaled(1.0 / mx);
                scale.add(std::log(mx));
            }
        }
    }
    return scale.value() + std::log(m.spectral_norm());
}

double stddev(std::span<const double> v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size()));
}

struct CMat2 {
    std::complex<double> a, b, c, d;
    CMat2 operator*(const CMat2& r) const {
        return {a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c, c * r.b + d * r.d};
    }
    double max_abs() const {
        return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
    }
    double spectral_norm() const {
        double s = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
        double dt = std::abs(a * d - b * c);
        double disc = s * s - 4.0 * dt * dt;
        if (disc < 0.0) disc = 0.0;
        return std::sqrt(0.5 * (s + std::sqrt(disc)));
    }
};

// log norm of prod_{m=n..1} (w T_E(m, .)) evaluated through the entire
// factors A_m(w) = ((E w - lambda (e^{2 pi i alpha m} w^2 + e^{-2 pi i alpha m}), -w), (w, 0))
double factored_log_norm(double lambda, double alpha, double E, int n,
                         std::complex<double> w) {
    CMat2 m{1.0, 0.0, 0.0, 1.0};
    double log_scale = 0.0;
    std::complex<double> w2 = w * w;
    for (int step = 1; step <= n; ++step) {
        double ang = kTwoPi * frac_mul_add(0.0, step, alpha);
        std::complex<double> e_plus(std::cos(ang), std::sin(ang));
        CMat2 t{E * w - lambda * (e_plus * w2 + std::conj(e_plus)), -w, w, {0.0, 0.0}};
        m = t * m;
        double mx = m.max_abs();
        if (mx > 1e100 || (mx > 0.0 && mx < 1e-100)) {
            m = {m.a / mx, m.b / mx, m.c / mx, m.d / mx};
            log_scale += std::log(mx);
        }
    }
    return log_scale + std::log(m.spectral_norm());
}

}  // namespace

LyapunovEstimate lyapunov_orbit(const Parameters& par, double E, long long n) {
    if (n < 1000) throw std::invalid_argument("lyapunov_orbit: n must be >= 1000");
    Mat2 m = Mat2::identity();
    KahanAccumulator scale;
    const int blocks = 16;
    std::vector<double> block_rate;
    block_rate.reserve(blocks);
    long long block_len = n / blocks;
    double prev_log = 0.0;
    long long next_mark = block_len;
    for (long long step = 1; step <= n; ++step) {
        double t = E - potential(par, step);
        double na = t * m.a - m.c, nb = t * m.b - m.d;
        m = {na, nb, m.a, m.b};
        if (step % kRenormCadence == 0) {
            double mx = m.max_abs();
            if (mx > 0.0) {
                m = m.scaled(1.0 / mx);
                scale.add(std::log(mx));
            }
        }
        if (step == next_mark && static_cast<long long>(block_rate.size()) < blocks) {
            double cur = scale.value() + std::log(m.spectral_norm());
            block_rate.push_back((cur - prev_log) / static_cast<double>(block_len));
            prev_log = cur;
            next_mark += block_len;
        }
    }
    LyapunovEstimate est;
    est.value = (scale.value() + std::log(m.spectral_norm())) / static_cast<double>(n);
    est.n_steps = n;
    est.method = "orbit";
    double mean = 0.0;
    for (double r : block_rate) mean += r;
    mean /= static_cast<double>(block_rate.size());
    est.stderr_ = stddev(block_rate, mean) / std::sqrt(static_cast<double>(block_rate.size()));
    return est;
}

std::vector<LyapunovEstimate> lyapunov_phase_average_sweep(double lambda, double alpha,
                                                           std::span<const double> energies,
                                                           long long n, int grid, Exec exec) {
    if (grid < 64) throw std::invalid_argument("phase_average: grid must be >= 64");
    if (n < 1) throw std::invalid_argument("phase_average: n must be positive");
    const std::size_t ne = energies.size();
    // per_phase[e * grid + j]
    std::vector<double> per_phase(ne * static_cast<std::size_t>(grid));

    // phases are processed in blocks so the sampled potential stays in a
    // bounded buffer even for very long products
    long long block = std::max<long long>(1, 4'000'000 / n);

    for (int j0 = 0; j0 < grid; j0 += static_cast<int>(block)) {
        int j1 = std::min(grid, j0 + static_cast<int>(block));
        auto run_phase = [&](int j) {
            std::vector<double> row(static_cast<std::size_t>(n));
            double omega_j = static_cast<double>(j) / static_cast<double>(grid);
            for (long long m = 1; m <= n; ++m) {
                double ang = frac_mul_add(omega_j, m, alpha);
                row[static_cast<std::size_t>(m - 1)] = 2.0 * lambda * std::cos(kTwoPi * ang);
            }
            for (std::size_t e = 0; e < ne; ++e) {
                per_phase[e * static_cast<std::size_t>(grid) + static_cast<std::size_t>(j)] =
                    phase_log_norm(row, energies[e]) / static_cast<double>(n);
            }
        };
        if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
            for (int j = j0; j < j1; ++j) run_phase(j);
        } else {
            for (int j = j0; j < j1; ++j) run_phase(j);
        }
    }

    std::vector<LyapunovEstimate> out(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        std::span<const double> vals(per_phase.data() + e * static_cast<std::size_t>(grid),
                                     static_cast<std::size_t>(grid));
        LyapunovEstimate est;
        est.value = pairwise_mean(vals);
        est.n_steps = n;
        est.method = "phase_average";
        est.stderr_ = stddev(vals, est.value);
        out[e] = est;
    }
    return out;
}

LyapunovEstimate lyapunov_phase_average(double lambda, double alpha, double E, long long n,
                                        int grid, Exec exec) {
    double energies[1] = {E};
    return lyapunov_phase_average_sweep(lambda, alpha, energies, n, grid, exec)[0];
}

HermanReport herman_subharmonic_check(double lambda, double alpha, double E, int n, int grid) {
    if (n < 1 || n > 200)
        throw std::invalid_argument("herman_subharmonic_check: n must be in [1, 200]");
    if (grid < 8) throw std::invalid_argument("herman_subharmonic_check: grid must be >= 8");
    HermanReport rep;
    rep.n = n;
    rep.grid = grid;
    rep.rhs = n * std::log(lambda);

    Parameters par(lambda, alpha, 0.0);
    std::vector<double> samples(static_cast<std::size_t>(grid));
    double max_gap = 0.0;
    for (int j = 0; j < grid; ++j) {
        double omega = static_cast<double>(j) / static_cast<double>(grid);
        std::complex<double> w(std::cos(kTwoPi * omega), std::sin(kTwoPi * omega));
        double via_factored = factored_log_norm(lambda, alpha, E, n, w);
        Parameters pj(lambda, alpha, omega);
        ScaledMat2 m = monodromy_scaled(pj, E, n);
        max_gap = std::max(max_gap, std::fabs(via_factored - m.log_spectral_norm()));
        samples[static_cast<std::size_t>(j)] = via_factored;
    }
    rep.lhs_average = pairwise_mean(samples);
    rep.margin = rep.lhs_average - rep.rhs;
    rep.max_identity_gap = max_gap;
    rep.n0_log_norm = factored_log_norm(lambda, alpha, E, n, {0.0, 0.0});
    (void)par;
    return rep;
}

}  // namespace amo
