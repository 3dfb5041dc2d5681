#pragma once

#include <span>
#include <string>
#include <vector>

#include "amo/operator_core.hpp"

namespace amo {

/// Execution policy for the data-parallel kernels.  Both policies produce
/// bit-identical results: parallel loops only fill index-addressed slots and
/// every reduction runs in a fixed deterministic order.
enum class Exec { serial, parallel };

struct LyapunovEstimate {
    double value = 0.0;      // nats per step
    long long n_steps = 0;
    std::string method;      // "orbit" | "phase_average"
    double stderr_ = 0.0;    // empirical spread (blocks for orbit, phases for average)
};

/// (1/n) log ||M_E(n, omega)|| along a single orbit, with the renormalized
/// product.  stderr is the empirical block-to-block spread of the growth
/// rate (16 blocks), reported as the standard error of their mean.
LyapunovEstimate lyapunov_orbit(const Parameters& par, double E, long long n);

/// Phase-grid average of (1/n) log ||M_E(n, omega_j)|| over omega_j = j/grid.
/// By the inf characterization this is an upper bound on gamma(E) up to
/// quadrature error.  stderr is the standard deviation across phases.
LyapunovEstimate lyapunov_phase_average(double lambda, double alpha, double E,
                                        long long n, int grid, Exec exec = Exec::parallel);

/// Same estimator for a whole energy grid; the sampled potential values are
/// shared across energies, which is where the sweep spends its time.
std::vector<LyapunovEstimate> lyapunov_phase_average_sweep(double lambda, double alpha,
                                                           std::span<const double> energies,
                                                           long long n, int grid,
                                                           Exec exec = Exec::parallel);

struct HermanReport {
    int n = 0;
    int grid = 0;
    double lhs_average = 0.0;      // (1/grid) sum_j log ||N_n(e^{2 pi i omega_j})||
    double rhs = 0.0;              // n log lambda
    double margin = 0.0;           // lhs_average - rhs, >= 0 expected
    double n0_log_norm = 0.0;      // log ||N_n(0)||, equals rhs analytically
    double max_identity_gap = 0.0; // max_j | log||N_n(w_j)|| - log||M(n,omega_j)|| |
};

/// Evaluates both sides of the subharmonicity inequality
///   mean_omega log ||N_n(e^{2 pi i omega})|| >= log ||N_n(0)|| = n log lambda
/// with N_n(w) built as the factored product of the entire-matrix steps.
/// Raw products only; n is capped at 200 to stay inside double range.
HermanReport herman_subharmonic_check(double lambda, double alpha, double E, int n, int grid);

}  // namespace amo
