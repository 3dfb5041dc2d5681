#include "amo/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "amo/angles.hpp"
#include "amo/tridiag.hpp"

namespace amo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEdgeTol = 1e-13;  // bisection runs to ULP exhaustion below this
constexpr double kMergeTol = 1e-11;

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

void require_coprime(long long p, long long q) {
    if (q < 1) throw std::invalid_argument("q must be >= 1");
    if (p < 0 || p > q) throw std::invalid_argument("p must be in [0, q]");
    if (q > 1 && gcd_ll(p == 0 ? q : p, q) != 1)
        throw std::invalid_argument("p/q must be in lowest terms");
}

}  // namespace

Discriminant::Discriminant(double lambda, long long p, long long q)
    : lambda_(lambda), p_(p), q_(q) {}

double Discriminant::trace(double E, double omega) const {
    // product T(q)...T(1) for the rational frequency p/q at phase omega
    double m_a = 1.0, m_b = 0.0, m_c = 0.0, m_d = 1.0;
    for (long long step = 1; step <= q_; ++step) {
        double ang = frac(omega + frac(static_cast<double>((step * p_) % q_) /
                                       static_cast<double>(q_)));
        double t = E - 2.0 * lambda_ * std::cos(kTwoPi * ang);
        double na = t * m_a - m_c, nb = t * m_b - m_d;
        m_c = m_a;
        m_d = m_b;
        m_a = na;
        m_b = nb;
    }
    return m_a + m_d;
}

double Discriminant::h_mean(double E) const {
    // the cosine harmonic q averages to zero exactly on the 4q grid
    KahanAccumulator acc;
    long long g = 4 * q_;
    for (long long j = 0; j < g; ++j)
        acc.add(trace(E, static_cast<double>(j) / static_cast<double>(g)));
    return acc.value() / static_cast<double>(g);
}

double Discriminant::h(double E) const { return trace(E, omega_star_); }

double Discriminant::residual(double E, double omega) const {
    double model = h(E) - amplitude_ * std::cos(kTwoPi * static_cast<double>(q_) * omega +
                                                phase_offset_);
    return std::fabs(trace(E, omega) - model);
}

Discriminant discriminant_decompose(double lambda, long long p, long long q) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    require_coprime(p, q);
    Discriminant d(lambda, p, q);

    // discrete Fourier coefficient at harmonic q over the 4q-point grid.
    // Probed at E = 0, where the trace stays O(2 + 2 lambda^q); outside the
    // band region it grows like e^{c q} and would drown the harmonic.
    const long long g = 4 * q;
    const double E_probe = 0.0;
    std::complex<double> cq(0.0, 0.0);
    for (long long j = 0; j < g; ++j) {
        double omega = static_cast<double>(j) / static_cast<double>(g);
        double ang = -kTwoPi * static_cast<double>(q) * omega;
        cq += d.trace(E_probe, omega) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    cq /= static_cast<double>(g);
    std::complex<double> ae = -2.0 * cq;  // trace = h - A cos(2 pi q w + phi)
    d.amplitude_ = std::abs(ae);
    d.phase_offset_ = std::arg(ae);
    // phase where the cosine factor vanishes, so one trace evaluates h
    d.omega_star_ = frac((0.25 - d.phase_offset_ / kTwoPi) / static_cast<double>(q));

    // validate the split off the construction grid; the amplitude enters the
    // scale because for lambda > 1 the cosine term dwarfs h inside the bands
    double worst = 0.0;
    const int n_omega = 7, n_energy = 9;
    for (int i = 0; i < n_omega; ++i) {
        double omega = frac(0.0317 + static_cast<double>(i) / (n_omega * 1.618033988749895));
        for (int e = 0; e < n_energy; ++e) {
            double E = -(2.0 + 2.0 * lambda) +
                       (4.0 + 4.0 * lambda) * (static_cast<double>(e) + 0.5) / n_energy;
            double res = d.residual(E, omega);
            double scale = 1.0 + std::fabs(d.h(E)) + d.amplitude_;
            worst = std::max(worst, res / scale);
        }
    }
    if (worst > 1e-9)
        throw DecompositionError("phase-uniform trace split failed validation: residual " +
                                 std::to_string(worst));
    return d;
}

namespace {

// Roots of h = target on the monotone pieces delimited by `knots`.  A piece
// endpoint whose value sits within `touch_tol` of the target is a tangency
// (collapsed gap): the knot itself is the (double) root and bisection on the
// adjacent pieces is suppressed, so near-critical rounding noise cannot
// fabricate a micro-gap or fuse two bands.
void bisect_roots(const Discriminant& d, const std::vector<double>& knots,
                  const std::vector<double>& knot_values, double target, double touch_tol,
                  std::vector<double>& roots) {
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        double a = knots[i], b = knots[i + 1];
        double fa = knot_values[i] - target, fb = knot_values[i + 1] - target;
        bool touch_a = std::fabs(fa) <= touch_tol;
        bool touch_b = std::fabs(fb) <= touch_tol;
        if (touch_a) roots.push_back(a);
        if (touch_b && i + 2 == knots.size()) roots.push_back(b);  // last knot
        if (touch_a || touch_b) continue;
        if (fa * fb < 0.0) {
            // bisect to ULP exhaustion; the midpoint degenerates when the
            // bracket can no longer be split
            for (;;) {
                double m = 0.5 * (a + b);
                if (m <= a || m >= b) break;
                double fm = d.h(m) - target;
                if (fm == 0.0) { a = b = m; break; }
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
    }
}

std::vector<double> critical_points(const Discriminant& d, double lo, double hi, int samples) {
    // Chebyshev-spaced samples; extrema bracketed by sign changes of the
    // central finite difference, then refined by bisection on the slope sign
    std::vector<double> x(static_cast<std::size_t>(samples)), f(x.size());
    for (int i = 0; i < samples; ++i) {
        double t = std::cos(std::numbers::pi * (samples - 1 - i) / (samples - 1));
        x[static_cast<std::size_t>(i)] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * t;
        f[static_cast<std::size_t>(i)] = d.h(x[static_cast<std::size_t>(i)]);
    }
    std::vector<double> crit;
    for (int i = 0; i + 2 < samples; ++i) {
        double s1 = f[i + 1] - f[i];
        double s2 = f[i + 2] - f[i + 1];
        if (s1 == 0.0) s1 = -s2;
        if ((s1 > 0.0) != (s2 > 0.0)) {
            // slope changes inside (x[i], x[i+2]); bisect on difference signs
            double a = x[i], b = x[i + 2];
            bool rising = s1 > 0.0;
            const double fd_step = 1e-6;
            for (int it = 0; it < 60 && b - a > 1e-9; ++it) {
                double m = 0.5 * (a + b);
                double slope = d.h(m + fd_step) - d.h(m - fd_step);
                if ((slope > 0.0) == rising)
                    a = m;
                else
                    b = m;
            }
            crit.push_back(0.5 * (a + b));
        }
    }
    return crit;
}

}  // namespace

BandSet band_set(double lambda, long long p, long long q) {
    Discriminant d = discriminant_decompose(lambda, p, q);
    const double T = 2.0 + 2.0 * std::pow(lambda, static_cast<double>(q));
    const double bound = 2.0 + 2.0 * lambda;
    const double lo = -bound - 1.0, hi = bound + 1.0;

    std::vector<double> crit;
    for (int samples = 16 * static_cast<int>(q) + 9;; samples *= 2) {
        crit = critical_points(d, lo, hi, samples);
        if (static_cast<long long>(crit.size()) == q - 1) break;
        if (samples > 512 * q + 9)
            throw DecompositionError("band_set: located " + std::to_string(crit.size()) +
                                     " critical points, expected " + std::to_string(q - 1));
    }

    std::vector<double> knots;
    knots.push_back(lo);
    for (double c : crit) knots.push_back(c);
    knots.push_back(hi);
    std::vector<double> knot_values(knots.size());
    for (std::size_t i = 0; i < knots.size(); ++i) knot_values[i] = d.h(knots[i]);

    const double touch_tol = 1e-10 * (1.0 + T);
    std::vector<double> roots;
    bisect_roots(d, knots, knot_values, +T, touch_tol, roots);
    bisect_roots(d, knots, knot_values, -T, touch_tol, roots);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::fabs(a - b) < kEdgeTol; }),
                roots.end());

    // membership of the midpoints decides which inter-root segments are bands
    BandSet bs;
    bs.lambda = lambda;
    bs.p = p;
    bs.q = q;
    std::vector<Interval> segments;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        double mid = 0.5 * (roots[i] + roots[i + 1]);
        if (std::fabs(d.h(mid)) <= T) segments.push_back({roots[i], roots[i + 1]});
    }
    // merge touching bands (collapsed gaps)
    for (const Interval& seg : segments) {
        if (!bs.intervals.empty() && seg.lo - bs.intervals.back().hi < kMergeTol) {
            bs.intervals.back().hi = seg.hi;
            ++bs.merged_gap_count;
        } else {
            bs.intervals.push_back(seg);
        }
    }
    long long band_equiv = static_cast<long long>(bs.intervals.size()) + bs.merged_gap_count;
    if (band_equiv != q)
        throw DecompositionError("band_set: assembled " + std::to_string(bs.intervals.size()) +
                                 " bands (+" + std::to_string(bs.merged_gap_count) +
                                 " merges) for q = " + std::to_string(q));
    return bs;
}

BandSet band_set_bloch_oracle(double lambda, long long p, long long q, int omega_grid) {
    require_coprime(p, q);
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    const int n = static_cast<int>(2 * q);
    // per band index, the union over the phase circle of a continuously
    // moving interval is the hull of its endpoints
    std::vector<Interval> hull(static_cast<std::size_t>(q),
                               {std::numeric_limits<double>::infinity(),
                                -std::numeric_limits<double>::infinity()});
    for (int j = 0; j < omega_grid; ++j) {
        double omega = static_cast<double>(j) / omega_grid;
        // 2q x 2q restriction with periodic boundary (Bloch phases 0 and pi
        // of the q-periodic problem); its eigenvalues are this phase's band
        // edges
        std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i) {
            double ang = frac(omega + frac(static_cast<double>(((i + 1) * p) % q) /
                                           static_cast<double>(q)));
            a[static_cast<std::size_t>(i) * n + i] = 2.0 * lambda * std::cos(kTwoPi * ang);
            int ip = (i + 1) % n;
            a[static_cast<std::size_t>(i) * n + ip] += 1.0;
            a[static_cast<std::size_t>(ip) * n + i] += 1.0;
        }
        std::vector<double> ev = jacobi_eigenvalues(std::move(a), n);
        for (int b = 0; b < q; ++b) {
            hull[static_cast<std::size_t>(b)].lo =
                std::min(hull[static_cast<std::size_t>(b)].lo, ev[static_cast<std::size_t>(2 * b)]);
            hull[static_cast<std::size_t>(b)].hi =
                std::max(hull[static_cast<std::size_t>(b)].hi,
                         ev[static_cast<std::size_t>(2 * b + 1)]);
        }
    }
    BandSet bs;
    bs.lambda = lambda;
    bs.p = p;
    bs.q = q;
    for (const Interval& seg : hull) {
        if (!bs.intervals.empty() && seg.lo <= bs.intervals.back().hi + kMergeTol) {
            bs.intervals.back().hi = std::max(bs.intervals.back().hi, seg.hi);
            ++bs.merged_gap_count;
        } else {
            bs.intervals.push_back(seg);
        }
    }
    return bs;
}

std::vector<Interval> gaps(const BandSet& bands) {
    if (bands.intervals.empty()) throw std::invalid_argument("gaps: empty band set");
    std::vector<Interval> out;
    for (std::size_t i = 0; i + 1 < bands.intervals.size(); ++i)
        out.push_back({bands.intervals[i].hi, bands.intervals[i + 1].lo});
    return out;
}

double measure(const BandSet& bands) {
    double s = 0.0;
    for (const Interval& iv : bands.intervals) s += iv.length();
    return s;
}

namespace {

// distance from point x to the closed set b
double point_set_distance(double x, const BandSet& b) {
    double best = std::numeric_limits<double>::infinity();
    for (const Interval& iv : b.intervals) {
        if (x < iv.lo)
            best = std::min(best, iv.lo - x);
        else if (x > iv.hi)
            best = std::min(best, x - iv.hi);
        else
            return 0.0;
    }
    return best;
}

// sup over the closed set a of dist(., b): attained at an endpoint of a or
// at a gap midpoint of b lying inside a
double directed_hausdorff(const BandSet& a, const BandSet& b) {
    double worst = 0.0;
    for (const Interval& iv : a.intervals) {
        worst = std::max(worst, point_set_distance(iv.lo, b));
        worst = std::max(worst, point_set_distance(iv.hi, b));
    }
    for (std::size_t i = 0; i + 1 < b.intervals.size(); ++i) {
        double mid = 0.5 * (b.intervals[i].hi + b.intervals[i + 1].lo);
        for (const Interval& iv : a.intervals) {
            if (mid >= iv.lo && mid <= iv.hi) {
                worst = std::max(worst, point_set_distance(mid, b));
                break;
            }
        }
    }
    return worst;
}

}  // namespace

double hausdorff_distance(const BandSet& a, const BandSet& b) {
    if (a.intervals.empty() || b.intervals.empty())
        throw std::invalid_argument("hausdorff_distance: empty band set");
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

BandSet scale_bands(const BandSet& b, double factor) {
    BandSet out = b;
    for (Interval& iv : out.intervals) {
        iv.lo *= factor;
        iv.hi *= factor;
        if (iv.lo > iv.hi) std::swap(iv.lo, iv.hi);
    }
    if (factor < 0.0) std::reverse(out.intervals.begin(), out.intervals.end());
    return out;
}

DualityScaleReport duality_scale_check(double lambda, long long p, long long q) {
    DualityScaleReport rep;
    rep.direct = band_set(lambda, p, q);
    rep.scaled_dual = scale_bands(band_set(1.0 / lambda, p, q), lambda);
    rep.distance = hausdorff_distance(rep.direct, rep.scaled_dual);
    return rep;
}

}  // namespace amo
