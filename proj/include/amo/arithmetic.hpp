#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amo/continued_fraction.hpp"

namespace amo {

enum class FrequencyKind { rational, diophantine_certified, liouville_certified, unverified };

const char* to_string(FrequencyKind k);

/// Finite-range certificate.  A certificate only ever asserts what was
/// scanned (up to N, or up to k_max); the infinite property is never claimed.
struct DiophantineScan {
    FrequencyKind kind = FrequencyKind::unverified;
    double c = 0.0, r = 0.0;
    long long N = 0;
    long long failing_n = -1;        // -1: none found
    double failing_value = 0.0;      // |sin(2 pi n alpha)| at failing_n
    double failing_threshold = 0.0;  // c / n^r at failing_n
    double min_margin = 0.0;         // min over scanned n of value/threshold
    long long min_margin_n = 0;
};

/// |sin(2 pi n alpha)| > c/n^r for all 0 < n <= N (the |n| scan is
/// symmetric).  Returns a finite-range certificate or the first failing n.
DiophantineScan diophantine_scan(double alpha, double c, double r, long long N);

struct LiouvilleStep {
    int k = 0;
    long long p = 0, q = 0;
    double log_residual = 0.0;   // log |alpha - p_k/q_k|
    double log_threshold = 0.0;  // -q_k log k
    enum Status { holds, fails, indeterminate } status = fails;
};

struct LiouvilleReport {
    FrequencyKind kind = FrequencyKind::unverified;
    std::vector<LiouvilleStep> steps;
    std::vector<int> passing_k;  // k >= 2 where the inequality holds
};

/// Checks |alpha - p_k/q_k| < k^{-q_k} for k = 1..k_max over the computed
/// convergents.  k = 1 is vacuous (threshold 1) and never counts toward the
/// certificate.  Threshold comparisons run in log space; a residual that
/// underflows to zero is reported indeterminate, never pass/fail.
LiouvilleReport liouville_witness(const ContinuedFraction& cf, int k_max);

struct ResonanceHit {
    long long n = 0;
    double value = 0.0;      // |sin(2 pi (omega + n alpha / 2))|
    double threshold = 0.0;  // exp(-|n|^{1/(2r)})
};

struct ResonanceReport {
    std::vector<ResonanceHit> hits;  // all |n| <= N violating the threshold
    long long N = 0;
    double r = 0.0;
    int cutoff = 0;                 // heuristic list-length cutoff used
    double expected_random_hits = 0.0;
    bool non_resonant_up_to_N = false;
};

/// Lists all 0 < |n| <= N with |sin(2 pi (omega + n alpha/2))| below
/// exp(-|n|^{1/(2r)}).  The resonant/non-resonant verdict is a heuristic:
/// the hit list is compared against a cutoff (default: 4 + 3x the count
/// expected for a uniformly random phase).
ResonanceReport resonance_scan(double omega, double alpha, double r, long long N,
                               int cutoff = -1);

/// Test fixture: sum_{k=1..depth} base^{-k!}, the standard Liouville-type
/// construction, evaluated in double precision.
double liouville_number(int base, int depth);

/// Parse a frequency/phase expression: decimal literal, "p/q", "golden"
/// ((sqrt 5 - 1)/2), "silver" (sqrt 2 - 1), or "liouville:<base>:<depth>".
double parse_angle_expr(const std::string& expr);

}  // namespace amo
