#include "amo/approximation.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "amo/tridiag.hpp"

namespace amo {

ApproxSpectrum spectrum_approx(double lambda, const ContinuedFraction& cf, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("spectrum_approx: tol must be positive");
    for (std::size_t k = 1; k <= cf.convergents.size(); ++k) {
        double err = cf.residual(static_cast<int>(k));
        double bound = 6.0 * std::sqrt(2.0 * lambda * err);
        if (bound <= tol) {
            const Convergent& cv = cf.convergents[k - 1];
            ApproxSpectrum out;
            out.p = cv.p;
            out.q = cv.q;
            out.alpha_error = err;
            out.error_bound = bound;
            out.bands = band_set(lambda, cv.p, cv.q);
            return out;
        }
    }
    throw std::runtime_error(
        "spectrum_approx: no convergent meets the tolerance; deepen the expansion");
}

std::vector<ButterflyRow> butterfly_dataset(double lambda, int q_max, Exec exec) {
    if (q_max < 1) throw std::invalid_argument("butterfly_dataset: q_max must be >= 1");
    // reduced fractions in [0, 1]: 0/1, 1/1, and all coprime 0 < p < q
    std::vector<std::pair<long long, long long>> fractions;  // (q, p)
    fractions.push_back({1, 0});
    fractions.push_back({1, 1});
    for (long long q = 2; q <= q_max; ++q)
        for (long long p = 1; p < q; ++p)
            if (std::gcd(p, q) == 1) fractions.push_back({q, p});
    std::sort(fractions.begin(), fractions.end());

    std::vector<std::vector<ButterflyRow>> slots(fractions.size());
    auto run_task = [&](std::size_t i) {
        auto [q, p] = fractions[i];
        BandSet bs = band_set(lambda, p, q);
        std::vector<ButterflyRow>& rows = slots[i];
        rows.reserve(bs.intervals.size());
        for (std::size_t b = 0; b < bs.intervals.size(); ++b)
            rows.push_back({p, q, static_cast<int>(b), bs.intervals[b].lo, bs.intervals[b].hi});
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < fractions.size(); ++i) run_task(i);
    } else {
        for (std::size_t i = 0; i < fractions.size(); ++i) run_task(i);
    }

    std::vector<ButterflyRow> out;
    for (const auto& rows : slots) out.insert(out.end(), rows.begin(), rows.end());
    return out;
}

namespace {

std::vector<double> ids_from_diagonal(const std::vector<double>& diag,
                                      std::span<const double> energies, Exec exec) {
    const int N = static_cast<int>(diag.size());
    std::vector<double> off(diag.size() - 1, 1.0);
    std::vector<double> out(energies.size());
    auto count_at = [&](std::size_t i) {
        out[i] = static_cast<double>(sturm_count_below(diag, off, energies[i])) / N;
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < energies.size(); ++i) count_at(i);
    } else {
        for (std::size_t i = 0; i < energies.size(); ++i) count_at(i);
    }
    return out;
}

}  // namespace

std::vector<double> ids_estimate(const Parameters& par, std::span<const double> energies,
                                 int N, Exec exec) {
    if (N < 100) throw std::invalid_argument("ids_estimate: N must be >= 100");
    std::vector<double> diag(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) diag[static_cast<std::size_t>(n)] = potential(par, n);
    return ids_from_diagonal(diag, energies, exec);
}

std::vector<double> ids_estimate_phase_averaged(double lambda, double alpha,
                                                std::span<const double> energies, int N,
                                                int phase_grid, Exec exec) {
    if (N < 100) throw std::invalid_argument("ids_estimate: N must be >= 100");
    if (phase_grid < 1) throw std::invalid_argument("ids_estimate: phase_grid must be >= 1");
    std::vector<double> acc(energies.size(), 0.0);
    for (int j = 0; j < phase_grid; ++j) {
        Parameters par(lambda, alpha, static_cast<double>(j) / phase_grid);
        std::vector<double> one = ids_estimate(par, energies, N, exec);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += one[i];
    }
    for (double& v : acc) v /= phase_grid;
    return acc;
}

}  // namespace amo
