#include "amo/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "amo/angles.hpp"

namespace amo {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kRenormCadence = 64;
}  // namespace

Parameters::Parameters(double lambda_, double alpha_, double omega_)
    : lambda(lambda_), alpha(frac(alpha_)), omega(frac(omega_)) {
    if (!std::isfinite(lambda_) || !(lambda_ > 0.0))
        throw std::invalid_argument("lambda must be positive and finite");
    if (!std::isfinite(alpha_) || !std::isfinite(omega_))
        throw std::invalid_argument("alpha and omega must be finite");
}

double potential(const Parameters& par, long long n) {
    double angle = frac_mul_add(par.omega, n, par.alpha);
    return 2.0 * par.lambda * std::cos(kTwoPi * angle);
}

Mat2 transfer_step(const Parameters& par, double E, long long m) {
    return {E - potential(par, m), -1.0, 1.0, 0.0};
}

Mat2 monodromy(const Parameters& par, double E, long long n) {
    if (n < 0) throw std::invalid_argument("monodromy: n must be nonnegative");
    Mat2 m = Mat2::identity();
    for (long long step = 1; step <= n; ++step) {
        double t = E - potential(par, step);
        // left-multiply by ((t,-1),(1,0)) without forming the full product
        double na = t * m.a - m.c, nb = t * m.b - m.d;
        m = {na, nb, m.a, m.b};
    }
    return m;
}

ScaledMat2 monodromy_scaled(const Parameters& par, double E, long long n) {
    if (n < 0) throw std::invalid_argument("monodromy_scaled: n must be nonnegative");
    ScaledMat2 out;
    out.m = Mat2::identity();
    KahanAccumulator scale;
    for (long long step = 1; step <= n; ++step) {
        double t = E - potential(par, step);
        double na = t * out.m.a - out.m.c, nb = t * out.m.b - out.m.d;
        out.m = {na, nb, out.m.a, out.m.b};
        if (step % kRenormCadence == 0) {
            double mx = out.m.max_abs();
            if (mx > 0.0) {
                out.m = out.m.scaled(1.0 / mx);
                scale.add(std::log(mx));
            }
        }
    }
    out.log_scale = scale.value();
    return out;
}

std::vector<double> solve_forward(const Parameters& par, double E, double u0, double u1,
                                  long long n_max) {
    if (n_max < 1) throw std::invalid_argument("solve_forward: n_max must be >= 1");
    std::vector<double> u(static_cast<std::size_t>(n_max) + 2);
    u[0] = u0;
    u[1] = u1;
    for (long long n = 1; n <= n_max; ++n) {
        u[static_cast<std::size_t>(n) + 1] =
            (E - potential(par, n)) * u[static_cast<std::size_t>(n)] -
            u[static_cast<std::size_t>(n) - 1];
    }
    return u;
}

double determinant_poly_shifted(const Parameters& par, double E, int k, long long site_shift) {
    if (k < 1) throw std::invalid_argument("determinant_poly: k must be >= 1");
    double d_prev = 0.0;  // D_{-1}
    double d_cur = 1.0;   // D_0
    for (int j = 0; j < k; ++j) {
        double d_new = (potential(par, site_shift + j) - E) * d_cur - d_prev;
        d_prev = d_cur;
        d_cur = d_new;
    }
    return d_cur;
}

double determinant_poly(const Parameters& par, double E, int k) {
    return determinant_poly_shifted(par, E, k, 0);
}

FiniteRestriction FiniteRestriction::build(const Parameters& par, long long n1, long long n2) {
    if (n2 < n1) throw std::invalid_argument("FiniteRestriction: n2 < n1");
    FiniteRestriction r;
    r.n1 = n1;
    r.n2 = n2;
    r.diagonal.resize(static_cast<std::size_t>(n2 - n1 + 1));
    for (long long n = n1; n <= n2; ++n)
        r.diagonal[static_cast<std::size_t>(n - n1)] = potential(par, n);
    r.off.assign(r.diagonal.size() - 1, 1.0);
    return r;
}

FiniteRestriction FiniteRestriction::from_diagonal(long long n1, std::vector<double> diag) {
    if (diag.empty()) throw std::invalid_argument("FiniteRestriction: empty diagonal");
    FiniteRestriction r;
    r.n1 = n1;
    r.n2 = n1 + static_cast<long long>(diag.size()) - 1;
    r.diagonal = std::move(diag);
    r.off.assign(r.diagonal.size() - 1, 1.0);
    return r;
}

double green_function(const FiniteRestriction& r, double E, long long n, long long m,
                      double pivot_tol) {
    if (n < r.n1 || n > r.n2 || m < r.n1 || m > r.n2)
        throw std::invalid_argument("green_function: site outside interval");
    TridiagLU lu(r.diagonal, r.off, E);
    if (lu.nearly_singular(pivot_tol))
        throw SingularSystemError("green_function: E within tolerance of a restriction eigenvalue");
    std::vector<double> rhs(r.diagonal.size(), 0.0);
    rhs[static_cast<std::size_t>(m - r.n1)] = 1.0;
    lu.solve(rhs);
    return rhs[static_cast<std::size_t>(n - r.n1)];
}

void green_boundary(const FiniteRestriction& r, double E, long long n,
                    double& g_left, double& g_right, double pivot_tol) {
    TridiagLU lu(r.diagonal, r.off, E);
    if (lu.nearly_singular(pivot_tol))
        throw SingularSystemError("green_boundary: E within tolerance of a restriction eigenvalue");
    std::vector<double> rhs(r.diagonal.size(), 0.0);
    rhs.front() = 1.0;
    lu.solve(rhs);
    g_left = rhs[static_cast<std::size_t>(n - r.n1)];
    std::fill(rhs.begin(), rhs.end(), 0.0);
    rhs.back() = 1.0;
    lu.solve(rhs);
    g_right = rhs[static_cast<std::size_t>(n - r.n1)];
}

RegularityResult classify_regular(const Parameters& par, double E, double gamma, int k,
                                  long long n) {
    if (!(gamma > 0.0)) throw std::invalid_argument("classify_regular: gamma must be positive");
    if (k < 5) throw std::invalid_argument("classify_regular: k must be >= 5");

    RegularityResult res;
    // admissible left endpoints: window [n1, n1+k-1] contains n with both
    // edge distances > k/5
    std::vector<long long> starts;
    for (long long n1 = n - k + 1; n1 <= n; ++n1) {
        long long n2 = n1 + k - 1;
        double dl = static_cast<double>(n - n1);
        double dr = static_cast<double>(n2 - n);
        if (dl > k / 5.0 && dr > k / 5.0) starts.push_back(n1);
    }
    // first witness wins, scanning by increasing |window center - n|
    std::stable_sort(starts.begin(), starts.end(), [&](long long a, long long b) {
        double ca = std::fabs(a + (k - 1) / 2.0 - static_cast<double>(n));
        double cb = std::fabs(b + (k - 1) / 2.0 - static_cast<double>(n));
        return ca < cb;
    });
    if (starts.empty()) {
        res.reason = "no admissible window satisfies the edge-distance condition";
        return res;
    }
    for (long long n1 : starts) {
        long long n2 = n1 + k - 1;
        ++res.windows_tested;
        FiniteRestriction r = FiniteRestriction::build(par, n1, n2);
        double gl = 0.0, gr = 0.0;
        try {
            green_boundary(r, E, n, gl, gr);
        } catch (const SingularSystemError&) {
            ++res.windows_skipped_singular;
            continue;
        }
        double bl = std::exp(-gamma * static_cast<double>(n - n1));
        double br = std::exp(-gamma * static_cast<double>(n2 - n));
        if (std::fabs(gl) < bl && std::fabs(gr) < br) {
            res.regular = true;
            res.n1 = n1;
            res.n2 = n2;
            res.g_left = gl;
            res.g_right = gr;
            return res;
        }
    }
    res.reason = "no window met the Green's-function decay bound";
    return res;
}

}  // namespace amo
