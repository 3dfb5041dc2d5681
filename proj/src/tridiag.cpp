#include "amo/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace amo {

TridiagLU::TridiagLU(std::span<const double> diag, std::span<const double> off, double shift)
    : n_(static_cast<int>(diag.size())) {
    if (n_ < 1) throw std::invalid_argument("TridiagLU: empty matrix");
    if (off.size() + 1 != diag.size()) throw std::invalid_argument("TridiagLU: off size");
    d_.resize(n_);
    dl_.assign(std::max(0, n_ - 1), 0.0);
    du_.assign(std::max(0, n_ - 1), 0.0);
    du2_.assign(std::max(0, n_ - 2), 0.0);
    swap_.assign(std::max(0, n_ - 1), 0);
    for (int i = 0; i < n_; ++i) d_[i] = diag[i] - shift;
    for (int i = 0; i + 1 < n_; ++i) dl_[i] = du_[i] = off[i];

    scale_ = 0.0;
    for (int i = 0; i < n_; ++i) scale_ = std::max(scale_, std::fabs(d_[i]));
    for (int i = 0; i + 1 < n_; ++i) scale_ = std::max(scale_, std::fabs(dl_[i]));
    if (scale_ == 0.0) scale_ = 1.0;

    min_pivot_ = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < n_; ++i) {
        if (std::fabs(d_[i]) >= std::fabs(dl_[i])) {
            swap_[i] = 0;
            double m = (d_[i] != 0.0) ? dl_[i] / d_[i] : 0.0;
            dl_[i] = m;
            d_[i + 1] -= m * du_[i];
            if (i + 2 < n_) du2_[i] = 0.0;
        } else {
            swap_[i] = 1;
            double m = d_[i] / dl_[i];
            d_[i] = dl_[i];
            dl_[i] = m;
            double tmp = du_[i];
            du_[i] = d_[i + 1];
            d_[i + 1] = tmp - m * d_[i + 1];
            if (i + 2 < n_) {
                du2_[i] = du_[i + 1];
                du_[i + 1] = -m * du_[i + 1];
            }
        }
        min_pivot_ = std::min(min_pivot_, std::fabs(d_[i]));
    }
    min_pivot_ = std::min(min_pivot_, std::fabs(d_[n_ - 1]));
}

void TridiagLU::solve(std::span<double> rhs) const {
    if (static_cast<int>(rhs.size()) != n_) throw std::invalid_argument("TridiagLU::solve size");
    // forward substitution with the recorded row swaps
    for (int i = 0; i + 1 < n_; ++i) {
        if (swap_[i]) std::swap(rhs[i], rhs[i + 1]);
        rhs[i + 1] -= dl_[i] * rhs[i];
    }
    // back substitution (U has up to two superdiagonals)
    rhs[n_ - 1] /= d_[n_ - 1];
    if (n_ >= 2) {
        rhs[n_ - 2] = (rhs[n_ - 2] - du_[n_ - 2] * rhs[n_ - 1]) / d_[n_ - 2];
    }
    for (int i = n_ - 3; i >= 0; --i) {
        rhs[i] = (rhs[i] - du_[i] * rhs[i + 1] - du2_[i] * rhs[i + 2]) / d_[i];
    }
}

int sturm_count_below(std::span<const double> diag, std::span<const double> off, double x) {
    const double tiny = 1e-300;
    int count = 0;
    double p = diag[0] - x;
    if (p == 0.0) p = -tiny;
    if (p < 0.0) ++count;
    for (std::size_t i = 1; i < diag.size(); ++i) {
        double e = off[i - 1];
        p = (diag[i] - x) - e * e / p;
        if (p == 0.0) p = -tiny;
        if (p < 0.0) ++count;
    }
    return count;
}

void gershgorin_bounds(std::span<const double> diag, std::span<const double> off,
                       double& lo, double& hi) {
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        double r = 0.0;
        if (i > 0) r += std::fabs(off[i - 1]);
        if (i + 1 < diag.size()) r += std::fabs(off[i]);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
}

std::vector<double> sturm_eigenvalues_by_index(std::span<const double> diag,
                                               std::span<const double> off,
                                               int index_lo, int index_hi,
                                               double lo, double hi, double tol) {
    std::vector<double> out;
    for (int j = index_lo; j < index_hi; ++j) {
        double a = lo, b = hi;
        while (b - a > tol) {
            double m = 0.5 * (a + b);
            if (m <= a || m >= b) break;  // hit double resolution
            if (sturm_count_below(diag, off, m) <= j)
                a = m;
            else
                b = m;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

std::vector<double> sturm_eigenvalues(std::span<const double> diag,
                                      std::span<const double> off,
                                      double lo, double hi, double tol) {
    int ilo = sturm_count_below(diag, off, lo);
    int ihi = sturm_count_below(diag, off, hi);
    return sturm_eigenvalues_by_index(diag, off, ilo, ihi, lo, hi, tol);
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off2 = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off2 += at(i, j) * at(i, j);
        if (off2 < 1e-26) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace amo
