#include "amo/angles.hpp"

namespace amo {

double frac_mul_add(double base, long long n, double alpha) {
    if (n == 0) return frac(base);
    double an = static_cast<double>(n);
    if (n > (1LL << 27) || n < -(1LL << 27)) {
        // fall back to extended precision for very large shifts
        long double x = static_cast<long double>(base) +
                        static_cast<long double>(n) * static_cast<long double>(alpha);
        long double f = x - std::floor(x);
        double out = static_cast<double>(f);
        return frac(out);
    }
    constexpr double split = 0x1p27 + 1.0;  // Dekker split constant
    double t = split * alpha;
    double hi = t - (t - alpha);
    double lo = alpha - hi;
    double big = frac(an * hi);     // an*hi exact, frac exact
    double small = an * lo;         // |small| stays O(1) for |n| < 2^27
    return frac(big + small + frac(base));
}

static double pairwise_sum_impl(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum_impl(v, h) + pairwise_sum_impl(v + h, n - h);
}

double pairwise_sum(std::span<const double> v) {
    return pairwise_sum_impl(v.data(), v.size());
}

}  // namespace amo
