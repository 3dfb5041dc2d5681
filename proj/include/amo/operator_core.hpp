#pragma once

#include <string>
#include <vector>

#include "amo/mat2.hpp"
#include "amo/tridiag.hpp"

namespace amo {

/// Coupling, frequency and phase of the operator
///   (H u)(n) = u(n+1) + u(n-1) + 2 lambda cos(2 pi (omega + n alpha)) u(n).
/// Angles are stored reduced mod 1; lambda must be positive (the sign
/// reduction to lambda > 0 is the caller's business).
struct Parameters {
    double lambda;
    double alpha;
    double omega;
    Parameters(double lambda_, double alpha_, double omega_);
};

/// 2 lambda cos(2 pi (omega + n alpha)); the angle is reduced mod 1 before
/// the cosine so large |n| does not degrade accuracy.
double potential(const Parameters& par, long long n);

/// One-step transfer matrix ((E - V(m), -1), (1, 0)).
Mat2 transfer_step(const Parameters& par, double E, long long m);

/// Raw product T(n) ... T(1); n = 0 gives the identity.  Valid while the
/// entries stay inside double range (callers use monodromy_scaled beyond
/// a few hundred steps at positive Lyapunov exponent).
Mat2 monodromy(const Parameters& par, double E, long long n);

/// Same product, renormalized by the running max-norm every 64 steps; the
/// removed magnitude accumulates in log_scale (compensated summation).
ScaledMat2 monodromy_scaled(const Parameters& par, double E, long long n);

/// Sequence u(0..n_max+1) of the three-term recurrence with u(0)=u0, u(1)=u1.
std::vector<double> solve_forward(const Parameters& par, double E, double u0, double u1,
                                  long long n_max);

/// det((H - E) restricted to [0, k-1]), by the tridiagonal determinant
/// recurrence.  P_1 = V(0) - E.
double determinant_poly(const Parameters& par, double E, int k);

/// Same determinant with the potential's phase shifted by `site_shift`
/// steps of alpha, i.e. for the interval [site_shift, site_shift + k - 1].
double determinant_poly_shifted(const Parameters& par, double E, int k, long long site_shift);

/// Dirichlet restriction of H to [n1, n2]: symmetric tridiagonal with the
/// sampled potential on the diagonal and unit off-diagonals.
struct FiniteRestriction {
    long long n1 = 0, n2 = 0;
    std::vector<double> diagonal;
    std::vector<double> off;  // all ones, size()-1 entries

    static FiniteRestriction build(const Parameters& par, long long n1, long long n2);
    static FiniteRestriction from_diagonal(long long n1, std::vector<double> diag);
    int size() const { return static_cast<int>(diagonal.size()); }
};

inline constexpr double kSingularPivotTol = 1e-13;

/// <delta_n, (H_[n1,n2] - E)^{-1} delta_m>; solves the tridiagonal system by
/// LU with partial pivoting.  Throws SingularSystemError when the relative
/// pivot drops below kSingularPivotTol (E is an eigenvalue of the
/// restriction within tolerance).
double green_function(const FiniteRestriction& r, double E, long long n, long long m,
                      double pivot_tol = kSingularPivotTol);

/// Both boundary columns G(n, n1) and G(n, n2) with one factorization.
void green_boundary(const FiniteRestriction& r, double E, long long n,
                    double& g_left, double& g_right, double pivot_tol = kSingularPivotTol);

struct RegularityResult {
    bool regular = false;
    long long n1 = 0, n2 = 0;      // witnessing window when regular
    double g_left = 0.0, g_right = 0.0;
    int windows_tested = 0;
    int windows_skipped_singular = 0;  // windows with E in the restriction spectrum
    std::string reason;
};

/// (gamma, k)-regularity of site n at energy E: scans every window
/// [n1, n1+k-1] containing n with both edge distances exceeding k/5,
/// ordered by increasing center offset from n, and returns the first one
/// where |G(n, edge)| < exp(-gamma |n - edge|) at both edges.  Windows where
/// E is an eigenvalue of the restriction are skipped and counted.
RegularityResult classify_regular(const Parameters& par, double E, double gamma, int k,
                                  long long n);

}  // namespace amo
