#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace amo {

/// Fractional part in [0, 1).
inline double frac(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;  // rare: x just below an integer rounds up
    if (f < 0.0) f = 0.0;
    return f;
}

/// frac(base + n*alpha) without the precision loss of forming n*alpha
/// directly.  alpha is split Dekker-style into a 26-bit head and a tail;
/// n*head is exact for |n| < 2^27 and its integer part is removed before
/// the small terms are added.
double frac_mul_add(double base, long long n, double alpha);

/// Deterministic pairwise (tree) summation; result independent of any
/// parallel schedule because it is always evaluated on the final array.
double pairwise_sum(std::span<const double> v);

inline double pairwise_mean(std::span<const double> v) {
    return v.empty() ? 0.0 : pairwise_sum(v) / static_cast<double>(v.size());
}

struct KahanAccumulator {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

}  // namespace amo
