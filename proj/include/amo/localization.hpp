#pragma once

#include <span>
#include <vector>

#include "amo/operator_core.hpp"

namespace amo {

struct EigenPair {
    double energy = 0.0;
    std::vector<double> vector;   // normalized; entry i lives at site n1 + i
    long long n1 = 0;
    long long center = 0;         // site of maximal |v|
    double residual = 0.0;        // ||(H - E) v||
    bool converged = false;
    bool degenerate = false;      // cluster resolved by restart + orthogonalization
    double decay_rate = 0.0;      // filled by decay_fit
    double fit_r2 = 0.0;
};

/// All eigenpairs of the restriction with eigenvalue in [lo, hi]: Sturm
/// bisection to 1e-12 for the values, inverse iteration with the shifted
/// factorization for the vectors.  The pair count matches the Sturm counts
/// at the window edges exactly.
std::vector<EigenPair> eigenpairs(const FiniteRestriction& r, double lo, double hi,
                                  unsigned long long seed = 42);

struct DecayFit {
    double rate = 0.0;    // nats per site, positive for decay
    double r2 = 0.0;
    int points_used = 0;
    bool refused = false; // fewer than 20 usable points
};

/// Least-squares slope of log|v| against |n - center|, ignoring entries
/// below rel_floor * max|v| and the outer boundary_frac of sites on each
/// side.
DecayFit decay_fit(const EigenPair& pair, double rel_floor = 1e-12,
                   double boundary_frac = 0.10);

struct GordonTrialReport {
    double ratio = 0.0;       // max of the three norms over ||(u(1), u(0))||
    double trace = 0.0;       // tr M_E(p)
    int branch = 0;           // 1: |trace| <= 1, 2: |trace| > 1
    double norm_minus = 0.0;  // ||(u(-p+1), u(-p))||
    double norm_plus = 0.0;   // ||(u(p+1), u(p))||
    double norm_double = 0.0; // ||(u(2p+1), u(2p))||
    double norm_base = 0.0;   // ||(u(1), u(0))||
};

/// Three-block estimate for a p-periodic potential: solves the recurrence
/// from (u0, u1) over [-p, 2p+1] and reports
///   max(norms at -p, p, 2p) >= (1/2) ||(u(1), u(0))||.
/// A violation beyond 1e-10 slack is an internal error and throws.
GordonTrialReport gordon_inequality_check(std::span<const double> V_period, double E,
                                          double u0, double u1);

struct GordonPotentialRow {
    long long qk = 0;
    double C = 0.0;
    double defect = 0.0;       // max_{1<=n<=qk} |V(n) - V(n +- qk)|
    double log_value = 0.0;    // log(defect) + qk log C
    double amo_log_bound = 0.0;// log(4 lambda pi dist(qk alpha, Z)) + qk log C
};

struct GordonPotentialReport {
    std::vector<GordonPotentialRow> rows;
    bool decreasing_to_zero = false;  // log_value strictly decreasing and final < 0
};

/// Gordon-potential criterion along the scales q_list with constants C_list
/// (all combinations), computed in log space.  The sampled-cosine bound
/// 4 lambda pi dist(q alpha, Z) C^q is evaluated alongside as a cross-check.
GordonPotentialReport gordon_potential_check(const Parameters& par,
                                             std::span<const long long> q_list,
                                             std::span<const double> C_list);

struct JsRow {
    long long m = 0;
    double defect = 0.0;     // sup_{|n| <= N} |V(2m - n) - V(n)|
    double threshold = 0.0;  // exp(-B m)
    bool satisfied = false;
};

struct JsReport {
    double B = 0.0;           // 4 log(3 + 2 ||V||_inf) + epsilon
    double v_inf = 0.0;       // 2 lambda for this potential
    std::vector<JsRow> rows;
};

/// Reflection-symmetry defect at centers m against the threshold e^{-B m}
/// with B just above 4 log(3 + 2 ||V||_inf).
JsReport js_condition_check(const Parameters& par, std::span<const long long> m_list,
                            long long N, double epsilon = 1e-3);

}  // namespace amo
