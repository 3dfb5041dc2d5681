#include "amo/localization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "amo/angles.hpp"
#include "amo/rng.hpp"
#include "amo/tridiag.hpp"

namespace amo {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void normalize(std::vector<double>& v) {
    double n = norm2(v);
    if (n > 0.0)
        for (double& x : v) x /= n;
}

double tridiag_residual(const FiniteRestriction& r, double E, const std::vector<double>& v) {
    const int n = r.size();
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double hv = (r.diagonal[static_cast<std::size_t>(i)] - E) * v[static_cast<std::size_t>(i)];
        if (i > 0) hv += v[static_cast<std::size_t>(i) - 1];
        if (i + 1 < n) hv += v[static_cast<std::size_t>(i) + 1];
        s += hv * hv;
    }
    return std::sqrt(s);
}

}  // namespace

std::vector<EigenPair> eigenpairs(const FiniteRestriction& r, double lo, double hi,
                                  unsigned long long seed) {
    if (!(lo <= hi)) throw std::invalid_argument("eigenpairs: empty window");
    const int n = r.size();
    int ilo = sturm_count_below(r.diagonal, r.off, lo);
    int ihi = sturm_count_below(r.diagonal, r.off, hi);
    std::vector<double> values =
        sturm_eigenvalues_by_index(r.diagonal, r.off, ilo, ihi, lo, hi, 1e-12);

    std::vector<EigenPair> out;
    out.reserve(values.size());
    std::vector<const std::vector<double>*> cluster;  // previous vectors of a near-degenerate run
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        EigenPair pair;
        pair.energy = values[idx];
        pair.n1 = r.n1;
        bool in_cluster = idx > 0 && std::fabs(values[idx] - values[idx - 1]) < 1e-10;
        if (!in_cluster) cluster.clear();

        TridiagLU lu(r.diagonal, r.off, pair.energy);
        auto rng = make_rng(seed, idx);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        std::vector<double> v(static_cast<std::size_t>(n));
        for (double& x : v) x = uni(rng);
        normalize(v);
        // orthogonalize against the cluster so repeated shifts split
        for (const auto* w : cluster) {
            double dot = 0.0;
            for (int i = 0; i < n; ++i) dot += v[static_cast<std::size_t>(i)] * (*w)[static_cast<std::size_t>(i)];
            for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= dot * (*w)[static_cast<std::size_t>(i)];
        }
        normalize(v);

        // iterate to the machine floor: the far tail of a localized vector
        // must fall below the decay-fit threshold, not sit at the noise of a
        // half-converged solve
        const int max_iter = 50;
        std::vector<double> best = v;
        double best_residual = std::numeric_limits<double>::infinity();
        int stale = 0;
        for (int it = 0; it < max_iter && stale < 3; ++it) {
            lu.solve(v);
            for (const auto* w : cluster) {
                double dot = 0.0;
                for (int i = 0; i < n; ++i) dot += v[static_cast<std::size_t>(i)] * (*w)[static_cast<std::size_t>(i)];
                for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= dot * (*w)[static_cast<std::size_t>(i)];
            }
            normalize(v);
            double resid = tridiag_residual(r, pair.energy, v);
            if (resid < best_residual) {
                best_residual = resid;
                best = v;
                stale = 0;
            } else {
                ++stale;
            }
            if (best_residual < 1e-14 * (1.0 + std::fabs(pair.energy))) break;
        }
        pair.residual = best_residual;
        pair.converged = best_residual < 1e-8 * (1.0 + std::fabs(pair.energy));
        pair.vector = std::move(best);
        pair.degenerate = in_cluster;
        std::size_t cmax = 0;
        for (std::size_t i = 1; i < pair.vector.size(); ++i)
            if (std::fabs(pair.vector[i]) > std::fabs(pair.vector[cmax])) cmax = i;
        pair.center = r.n1 + static_cast<long long>(cmax);
        out.push_back(std::move(pair));
        if (in_cluster || (idx + 1 < values.size() && std::fabs(values[idx + 1] - values[idx]) < 1e-10))
            cluster.push_back(&out.back().vector);
    }
    return out;
}

DecayFit decay_fit(const EigenPair& pair, double rel_floor, double boundary_frac) {
    if (pair.vector.size() < 200)
        throw std::invalid_argument("decay_fit: vector must have at least 200 entries");
    DecayFit fit;
    const long long n = static_cast<long long>(pair.vector.size());
    const long long skirt = static_cast<long long>(std::floor(boundary_frac * n));
    double vmax = 0.0;
    for (double x : pair.vector) vmax = std::max(vmax, std::fabs(x));
    double floor_abs = rel_floor * vmax;

    // least squares of log|v| against distance from the center
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    long long count = 0;
    for (long long i = skirt; i < n - skirt; ++i) {
        double a = std::fabs(pair.vector[static_cast<std::size_t>(i)]);
        if (a <= floor_abs) continue;
        double x = std::fabs(static_cast<double>(pair.n1 + i - pair.center));
        double y = std::log(a);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        ++count;
    }
    fit.points_used = static_cast<int>(count);
    if (count < 20) {
        fit.refused = true;
        return fit;
    }
    double denom = count * sxx - sx * sx;
    if (denom <= 0.0) {
        fit.refused = true;
        return fit;
    }
    double slope = (count * sxy - sx * sy) / denom;
    fit.rate = -slope;
    double ss_tot = syy - sy * sy / count;
    double intercept = (sy - slope * sx) / count;
    double ss_res = 0.0;
    // second pass for the residual sum
    for (long long i = skirt; i < n - skirt; ++i) {
        double a = std::fabs(pair.vector[static_cast<std::size_t>(i)]);
        if (a <= floor_abs) continue;
        double x = std::fabs(static_cast<double>(pair.n1 + i - pair.center));
        double e = std::log(a) - (intercept + slope * x);
        ss_res += e * e;
    }
    fit.r2 = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

GordonTrialReport gordon_inequality_check(std::span<const double> V_period, double E,
                                          double u0, double u1) {
    const long long p = static_cast<long long>(V_period.size());
    if (p < 1) throw std::invalid_argument("gordon_inequality_check: empty period");
    // V(n) for n in [-p, 2p+1] by periodic extension of V(1..p)
    auto V = [&](long long n) {
        long long idx = ((n - 1) % p + p) % p;  // n=1 -> V_period[0]
        return V_period[static_cast<std::size_t>(idx)];
    };
    // u on [-p, 2p+1]; u[off + n] stores u(n)
    const long long off = p;
    std::vector<double> u(static_cast<std::size_t>(3 * p + 2));
    u[static_cast<std::size_t>(off)] = u0;
    u[static_cast<std::size_t>(off + 1)] = u1;
    for (long long n = 1; n <= 2 * p; ++n)
        u[static_cast<std::size_t>(off + n + 1)] =
            (E - V(n)) * u[static_cast<std::size_t>(off + n)] -
            u[static_cast<std::size_t>(off + n - 1)];
    for (long long n = 0; n >= -p + 1; --n)
        u[static_cast<std::size_t>(off + n - 1)] =
            (E - V(n)) * u[static_cast<std::size_t>(off + n)] -
            u[static_cast<std::size_t>(off + n + 1)];

    auto pair_norm = [&](long long n) {
        double a = u[static_cast<std::size_t>(off + n + 1)];
        double b = u[static_cast<std::size_t>(off + n)];
        return std::sqrt(a * a + b * b);
    };
    GordonTrialReport rep;
    rep.norm_minus = pair_norm(-p);
    rep.norm_plus = pair_norm(p);
    rep.norm_double = pair_norm(2 * p);
    rep.norm_base = pair_norm(0);

    // trace of the one-period transfer matrix
    Mat2 m = Mat2::identity();
    for (long long step = 1; step <= p; ++step) {
        double t = E - V(step);
        double na = t * m.a - m.c, nb = t * m.b - m.d;
        m = {na, nb, m.a, m.b};
    }
    rep.trace = m.trace();
    rep.branch = (std::fabs(rep.trace) <= 1.0) ? 1 : 2;

    double best = std::max(rep.norm_minus, std::max(rep.norm_plus, rep.norm_double));
    rep.ratio = (rep.norm_base > 0.0) ? best / rep.norm_base : 1.0;
    if (rep.norm_base > 0.0 && rep.ratio < 0.5 - 1e-10)
        throw std::logic_error("gordon_inequality_check: three-block estimate violated");
    return rep;
}

GordonPotentialReport gordon_potential_check(const Parameters& par,
                                             std::span<const long long> q_list,
                                             std::span<const double> C_list) {
    if (q_list.empty()) throw std::invalid_argument("gordon_potential_check: empty q_list");
    for (std::size_t i = 1; i < q_list.size(); ++i)
        if (q_list[i] <= q_list[i - 1])
            throw std::invalid_argument("gordon_potential_check: q_list must increase");
    GordonPotentialReport rep;
    for (double C : C_list) {
        for (long long qk : q_list) {
            GordonPotentialRow row;
            row.qk = qk;
            row.C = C;
            double defect = 0.0;
            for (long long n = 1; n <= qk; ++n) {
                double v = potential(par, n);
                defect = std::max(defect, std::fabs(v - potential(par, n + qk)));
                defect = std::max(defect, std::fabs(v - potential(par, n - qk)));
            }
            row.defect = defect;
            row.log_value = std::log(defect) + static_cast<double>(qk) * std::log(C);
            double dist = frac_mul_add(0.0, qk, par.alpha);
            dist = std::min(dist, 1.0 - dist);
            row.amo_log_bound = std::log(4.0 * par.lambda * std::numbers::pi * dist) +
                                static_cast<double>(qk) * std::log(C);
            rep.rows.push_back(row);
        }
    }
    // decreasing-to-zero verdict along q_list for the last C supplied
    rep.decreasing_to_zero = true;
    std::size_t base = rep.rows.size() - q_list.size();
    for (std::size_t i = base + 1; i < rep.rows.size(); ++i)
        if (rep.rows[i].log_value >= rep.rows[i - 1].log_value) rep.decreasing_to_zero = false;
    if (rep.rows.back().log_value >= 0.0) rep.decreasing_to_zero = false;
    return rep;
}

JsReport js_condition_check(const Parameters& par, std::span<const long long> m_list,
                            long long N, double epsilon) {
    if (m_list.empty()) throw std::invalid_argument("js_condition_check: empty m_list");
    JsReport rep;
    rep.v_inf = 2.0 * par.lambda;
    rep.B = 4.0 * std::log(3.0 + 2.0 * rep.v_inf) + epsilon;
    for (long long m : m_list) {
        JsRow row;
        row.m = m;
        double defect = 0.0;
        for (long long n = -N; n <= N; ++n)
            defect = std::max(defect, std::fabs(potential(par, 2 * m - n) - potential(par, n)));
        row.defect = defect;
        row.threshold = std::exp(-rep.B * static_cast<double>(m));
        row.satisfied = defect < row.threshold;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace amo
