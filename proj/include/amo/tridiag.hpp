#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace amo {

struct SingularSystemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// LU factorization with partial pivoting of (T - shift) for a symmetric
/// tridiagonal T given by its diagonal and (sub=super) off-diagonal.
/// Pivoting introduces one extra superdiagonal (du2).
class TridiagLU {
  public:
    TridiagLU(std::span<const double> diag, std::span<const double> off, double shift);

    /// Solve (T - shift) x = rhs in place.
    void solve(std::span<double> rhs) const;

    bool nearly_singular(double rel_tol) const { return min_pivot_ < rel_tol * scale_; }
    double min_pivot() const { return min_pivot_; }
    double scale() const { return scale_; }

  private:
    int n_;
    std::vector<double> dl_, d_, du_, du2_;
    std::vector<int> swap_;
    double min_pivot_ = 0.0;
    double scale_ = 0.0;
};

/// Number of eigenvalues of the symmetric tridiagonal (diag, off) strictly
/// below x, by the classic Sturm/LDL^T sign count.
int sturm_count_below(std::span<const double> diag, std::span<const double> off, double x);

/// All eigenvalues in [lo, hi), each located by bisection to tol.
std::vector<double> sturm_eigenvalues(std::span<const double> diag,
                                      std::span<const double> off,
                                      double lo, double hi, double tol = 1e-12);

/// Eigenvalues with Sturm indices [index_lo, index_hi) (0-based, ascending).
std::vector<double> sturm_eigenvalues_by_index(std::span<const double> diag,
                                               std::span<const double> off,
                                               int index_lo, int index_hi,
                                               double lo, double hi, double tol = 1e-12);

/// Crude Gershgorin enclosure [lo, hi] of the spectrum.
void gershgorin_bounds(std::span<const double> diag, std::span<const double> off,
                       double& lo, double& hi);

/// Eigenvalues of a small dense symmetric matrix (row-major, n*n) by cyclic
/// Jacobi rotations; returned ascending.  Used as an independent oracle.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n);

}  // namespace amo
