#pragma once

#include <cstdint>
#include <vector>

namespace amo {

struct Convergent {
    long long p = 0, q = 1;
    double value() const { return static_cast<double>(p) / static_cast<double>(q); }
};

/// Continued fraction [a0; a1, a2, ...] of a number in (0,1), a0 = 0.
/// The expansion is computed by exact integer Euclid on the dyadic rational
/// the input double represents, so the convergent recurrence and the
/// enclosure inequalities hold exactly for the stored value.
struct ContinuedFraction {
    double alpha = 0.0;
    int a0 = 0;
    std::vector<long long> partial_quotients;  // a_1 .. a_K
    std::vector<Convergent> convergents;       // k = 1 .. K
    bool terminated = false;          // Euclid reached remainder zero
    bool quotient_cutoff_hit = false; // a "huge" quotient signalled a rational
    bool overflow_stopped = false;    // convergents would overflow 64 bits

    bool is_rational() const { return terminated || quotient_cutoff_hit; }
    /// |alpha - p_k/q_k| evaluated in extended precision (k is 1-based).
    double residual(int k) const;
};

/// Expand alpha in (0,1) to at most `depth` partial quotients.  Quotients at
/// or above `quotient_cutoff` end the expansion and flag the input as an
/// intended rational (the previous convergent is then exact for it).
ContinuedFraction expand_continued_fraction(double alpha, int depth,
                                            long long quotient_cutoff = (1LL << 40));

}  // namespace amo
