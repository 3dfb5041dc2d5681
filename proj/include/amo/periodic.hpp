#pragma once

#include <utility>
#include <vector>

#include "amo/operator_core.hpp"

namespace amo {

struct DecompositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Interval {
    double lo = 0.0, hi = 0.0;
    double length() const { return hi - lo; }
};

/// Finite union of closed, disjoint, sorted energy intervals.
struct BandSet {
    std::vector<Interval> intervals;
    double lambda = 0.0;
    long long p = -1, q = -1;     // provenance when coming from a rational frequency
    int merged_gap_count = 0;     // gaps collapsed below the merge tolerance
    double min() const { return intervals.front().lo; }
    double max() const { return intervals.back().hi; }
};

/// Phase-uniform split of the period-q trace:
///   tr M_E(q, omega) = h(E) - amplitude * cos(2 pi q omega + phase_offset)
/// with h monic of degree q and amplitude = 2 lambda^q.  h is recovered as
/// the mean of the trace over the 4q-point phase grid; amplitude and phase
/// from the discrete Fourier coefficient at harmonic q.
class Discriminant {
  public:
    Discriminant(double lambda, long long p, long long q);

    double trace(double E, double omega) const;  // tr M_E(q, omega), direct product
    double h(double E) const;                    // phase-uniform part, single trace
    double h_mean(double E) const;               // 4q-grid mean (validation path)

    double amplitude() const { return amplitude_; }
    double phase_offset() const { return phase_offset_; }
    long long q() const { return q_; }
    long long p() const { return p_; }
    double lambda() const { return lambda_; }
    double residual(double E, double omega) const;

  private:
    friend Discriminant discriminant_decompose(double lambda, long long p, long long q);
    double lambda_;
    long long p_, q_;
    double amplitude_ = 0.0;
    double phase_offset_ = 0.0;
    double omega_star_ = 0.0;  // phase where the cosine term vanishes
};

/// Builds the decomposition and validates the split on an off-grid test set;
/// a residual above 1e-9 (1 + |h|) throws DecompositionError.
Discriminant discriminant_decompose(double lambda, long long p, long long q);

/// Exact band structure of the rational-frequency spectrum
///   {E : h(E) in [-2 - 2 lambda^q, 2 + 2 lambda^q]},
/// edges refined by bisection to 1e-12.  Touching bands (separation below
/// 1e-11) are merged and counted in merged_gap_count.
BandSet band_set(double lambda, long long p, long long q);

/// Brute-force reference: union over an omega grid of the eigenvalues of the
/// 2q x 2q periodic-boundary restriction (Bloch phases 0 and pi), assembled
/// into bands.  Retained as the independent oracle for band_set.
BandSet band_set_bloch_oracle(double lambda, long long p, long long q, int omega_grid = 64);

/// Bounded complementary intervals between consecutive bands.
std::vector<Interval> gaps(const BandSet& bands);

/// Total Lebesgue measure of the bands.
double measure(const BandSet& bands);

/// Exact Hausdorff distance between two finite unions of closed intervals.
double hausdorff_distance(const BandSet& a, const BandSet& b);

BandSet scale_bands(const BandSet& b, double factor);

struct DualityScaleReport {
    double distance = 0.0;
    BandSet direct;
    BandSet scaled_dual;
};

/// Compares band_set(lambda, p/q) with lambda * band_set(1/lambda, p/q).
DualityScaleReport duality_scale_check(double lambda, long long p, long long q);

}  // namespace amo
