#include "amo/arithmetic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "amo/angles.hpp"

namespace amo {

const char* to_string(FrequencyKind k) {
    switch (k) {
        case FrequencyKind::rational: return "rational";
        case FrequencyKind::diophantine_certified: return "diophantine_certified";
        case FrequencyKind::liouville_certified: return "liouville_certified";
        case FrequencyKind::unverified: return "unverified";
    }
    return "unverified";
}

DiophantineScan diophantine_scan(double alpha, double c, double r, long long N) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite");
    if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
    if (!(r > 1.0)) throw std::invalid_argument("r must exceed 1");
    if (N < 1) throw std::invalid_argument("N must be positive");

    DiophantineScan out;
    out.c = c;
    out.r = r;
    out.N = N;
    out.min_margin = std::numeric_limits<double>::infinity();
    for (long long n = 1; n <= N; ++n) {
        double angle = frac_mul_add(0.0, n, alpha);
        double value = std::fabs(std::sin(2.0 * std::numbers::pi * angle));
        double threshold = c / std::pow(static_cast<double>(n), r);
        double margin = value / threshold;
        if (margin < out.min_margin) {
            out.min_margin = margin;
            out.min_margin_n = n;
        }
        if (value <= threshold) {
            out.kind = FrequencyKind::unverified;
            out.failing_n = n;
            out.failing_value = value;
            out.failing_threshold = threshold;
            return out;
        }
    }
    out.kind = FrequencyKind::diophantine_certified;
    return out;
}

LiouvilleReport liouville_witness(const ContinuedFraction& cf, int k_max) {
    if (k_max < 1) throw std::invalid_argument("k_max must be positive");
    LiouvilleReport rep;
    int K = std::min<int>(k_max, static_cast<int>(cf.convergents.size()));
    for (int k = 1; k <= K; ++k) {
        const Convergent& cv = cf.convergents[static_cast<std::size_t>(k - 1)];
        LiouvilleStep step;
        step.k = k;
        step.p = cv.p;
        step.q = cv.q;
        step.log_threshold = -static_cast<double>(cv.q) * std::log(static_cast<double>(k));
        double res = cf.residual(k);
        if (res == 0.0) {
            // the stored double is exactly p_k/q_k; a strict inequality on the
            // intended real number cannot be decided at working precision
            step.log_residual = -std::numeric_limits<double>::infinity();
            step.status = LiouvilleStep::indeterminate;
        } else {
            step.log_residual = std::log(res);
            step.status = (step.log_residual < step.log_threshold) ? LiouvilleStep::holds
                                                                   : LiouvilleStep::fails;
        }
        if (step.status == LiouvilleStep::holds && k >= 2) rep.passing_k.push_back(k);
        rep.steps.push_back(step);
    }
    rep.kind = rep.passing_k.empty() ? FrequencyKind::unverified
                                     : FrequencyKind::liouville_certified;
    return rep;
}

ResonanceReport resonance_scan(double omega, double alpha, double r, long long N,
                               int cutoff) {
    if (!(r > 1.0)) throw std::invalid_argument("r must exceed 1");
    if (N < 1) throw std::invalid_argument("N must be positive");
    ResonanceReport rep;
    rep.N = N;
    rep.r = r;
    const double pi = std::numbers::pi;
    double expected = 0.0;
    for (long long n = -N; n <= N; ++n) {
        if (n == 0) continue;
        double threshold =
            std::exp(-std::pow(static_cast<double>(std::llabs(n)), 1.0 / (2.0 * r)));
        expected += (2.0 / pi) * threshold;
        double angle = frac_mul_add(omega, n, alpha * 0.5);
        double value = std::fabs(std::sin(2.0 * pi * angle));
        if (value < threshold) rep.hits.push_back({n, value, threshold});
    }
    rep.expected_random_hits = expected;
    rep.cutoff = (cutoff >= 0) ? cutoff : static_cast<int>(4.0 + 3.0 * expected);
    rep.non_resonant_up_to_N = static_cast<int>(rep.hits.size()) <= rep.cutoff;
    return rep;
}

double liouville_number(int base, int depth) {
    if (base < 2) throw std::invalid_argument("base must be >= 2");
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    double sum = 0.0;
    double fact = 1.0;
    for (int k = 1; k <= depth; ++k) {
        fact *= k;
        if (fact * std::log(static_cast<double>(base)) > 700.0) break;  // underflow floor
        sum += std::pow(static_cast<double>(base), -fact);
    }
    return sum;
}

double parse_angle_expr(const std::string& expr) {
    if (expr == "golden") return (std::sqrt(5.0) - 1.0) / 2.0;
    if (expr == "silver") return std::sqrt(2.0) - 1.0;
    if (expr.rfind("liouville", 0) == 0) {
        int base = 2, depth = 4;
        auto c1 = expr.find(':');
        if (c1 != std::string::npos) {
            auto c2 = expr.find(':', c1 + 1);
            base = std::stoi(expr.substr(c1 + 1, c2 - c1 - 1));
            if (c2 != std::string::npos) depth = std::stoi(expr.substr(c2 + 1));
        }
        return liouville_number(base, depth);
    }
    auto slash = expr.find('/');
    if (slash != std::string::npos) {
        double p = std::stod(expr.substr(0, slash));
        double q = std::stod(expr.substr(slash + 1));
        if (q == 0.0) throw std::invalid_argument("zero denominator in angle expression");
        return p / q;
    }
    std::size_t pos = 0;
    double v = std::stod(expr, &pos);
    if (pos != expr.size()) throw std::invalid_argument("cannot parse angle expression: " + expr);
    return v;
}

}  // namespace amo
