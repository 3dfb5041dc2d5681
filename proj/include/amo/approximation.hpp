#pragma once

#include <span>
#include <vector>

#include "amo/continued_fraction.hpp"
#include "amo/lyapunov.hpp"
#include "amo/periodic.hpp"

namespace amo {

struct ApproxSpectrum {
    BandSet bands;
    long long p = 0, q = 1;     // convergent used
    double alpha_error = 0.0;   // |alpha - p/q|
    double error_bound = 0.0;   // 6 sqrt(2 lambda |alpha - p/q|), Hausdorff radius
};

/// Spectrum of an irrational frequency by its smallest-q convergent whose
/// continuity bound 6 sqrt(2 lambda |alpha - p/q|) meets `tol`.  Throws
/// std::runtime_error asking for a deeper expansion when no convergent
/// qualifies.
ApproxSpectrum spectrum_approx(double lambda, const ContinuedFraction& cf, double tol);

struct ButterflyRow {
    long long p = 0, q = 1;
    int band_index = 0;
    double left = 0.0, right = 0.0;
};

/// Band intervals of every reduced fraction p/q with 0 <= p/q <= 1 and
/// q <= q_max, ordered by (q, p, band_index).  Rows are independent tasks;
/// the parallel policy fills a preordered slot per fraction, so output is
/// identical to the serial policy.
std::vector<ButterflyRow> butterfly_dataset(double lambda, int q_max,
                                            Exec exec = Exec::parallel);

/// Integrated density of states of the [0, N-1] Dirichlet restriction:
/// k(E) = #{eigenvalues <= E}/N via Sturm counts, no diagonalization.
std::vector<double> ids_estimate(const Parameters& par, std::span<const double> energies,
                                 int N, Exec exec = Exec::parallel);

/// Same, averaged over `phase_grid` equispaced phases.
std::vector<double> ids_estimate_phase_averaged(double lambda, double alpha,
                                                std::span<const double> energies, int N,
                                                int phase_grid, Exec exec = Exec::parallel);

}  // namespace amo
