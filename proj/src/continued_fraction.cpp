#include "amo/continued_fraction.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace amo {

double ContinuedFraction::residual(int k) const {
    if (k < 1 || k > static_cast<int>(convergents.size()))
        throw std::out_of_range("ContinuedFraction::residual");
    const Convergent& cv = convergents[static_cast<std::size_t>(k - 1)];
    long double diff = static_cast<long double>(alpha) * cv.q - static_cast<long double>(cv.p);
    return static_cast<double>(std::fabs(static_cast<double>(diff)) /
                               static_cast<double>(cv.q));
}

ContinuedFraction expand_continued_fraction(double alpha, int depth,
                                            long long quotient_cutoff) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0,1)");
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");

    ContinuedFraction cf;
    cf.alpha = alpha;
    cf.a0 = 0;

    // dyadic decomposition: alpha = num / 2^t exactly
    int exp2 = 0;
    double mant = std::frexp(alpha, &exp2);  // alpha = mant * 2^exp2, mant in [0.5, 1)
    // mant * 2^53 is an integer
    unsigned __int128 num = static_cast<unsigned __int128>(std::ldexp(mant, 53));
    int t = 53 - exp2;
    if (t >= 127) throw std::invalid_argument("alpha too small for exact expansion");
    unsigned __int128 den = static_cast<unsigned __int128>(1) << t;

    // Euclid with convergent recurrence
    long long p_prev = 1, q_prev = 0;  // k = -1
    long long p_cur = 0, q_cur = 1;    // k = 0
    unsigned __int128 a = num, b = den;  // expanding b/a after inversion step below

    // alpha = num/den in (0,1): a1 = floor(den/num), then continue on remainders
    unsigned __int128 x = den, y = num;  // invariant: next quotient = floor(x/y)
    const long long kMaxConv = std::numeric_limits<long long>::max() / 4;
    (void)a; (void)b;

    for (int k = 1; k <= depth; ++k) {
        if (y == 0) {  // previous convergent was exact
            cf.terminated = true;
            break;
        }
        unsigned __int128 quot = x / y;
        unsigned __int128 rem = x % y;
        if (quot >= static_cast<unsigned __int128>(quotient_cutoff)) {
            cf.quotient_cutoff_hit = true;
            break;
        }
        long long ak = static_cast<long long>(quot);
        // overflow guard on the recurrence
        if (q_cur > 0 && (kMaxConv - q_prev) / ak < q_cur) {
            cf.overflow_stopped = true;
            break;
        }
        long long p_new = ak * p_cur + p_prev;
        long long q_new = ak * q_cur + q_prev;
        cf.partial_quotients.push_back(ak);
        cf.convergents.push_back({p_new, q_new});
        p_prev = p_cur; q_prev = q_cur;
        p_cur = p_new; q_cur = q_new;
        x = y;
        y = rem;
        if (y == 0) {
            cf.terminated = true;
            break;
        }
    }
    return cf;
}

}  // namespace amo
