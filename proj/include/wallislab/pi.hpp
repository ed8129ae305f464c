#pragma once

#include "wallislab/interval.hpp"
#include "wallislab/rational.hpp"

#include <stdexcept>

namespace wallislab {

/// Certified rational enclosure of pi at a requested decimal accuracy.
struct PiEnclosure {
    RatInterval interval;  // provably contains pi
    unsigned digits = 0;   // width <= 10^-digits
};

namespace detail {

/// Bracket of arctan(1/x) for integer x >= 2 from consecutive partial sums
/// of the alternating series sum (-1)^k / ((2k+1) x^(2k+1)). Terms are
/// strictly decreasing, so the truth lies between S_m and S_{m+1}; the
/// bracket width is exactly the first omitted term.
inline RatInterval arctan_inv_bracket(unsigned x, const BigRational& term_budget) {
    BigInt x_sq = BigInt(x) * x;
    BigInt x_pow = x;  // x^(2k+1)
    BigRational sum(0);
    for (unsigned k = 0;; ++k) {
        BigRational term(1, BigInt(2 * k + 1) * x_pow);
        if (term <= term_budget) {
            // value lies between sum and sum +/- term
            if (k % 2 == 0) return {sum, sum + term};
            return {sum - term, sum};
        }
        if (k % 2 == 0)
            sum += term;
        else
            sum -= term;
        x_pow *= x_sq;
    }
}

}  // namespace detail

/// Enclosure of pi from Machin's identity pi = 16*arctan(1/5) - 4*arctan(1/239),
/// each arctan bracketed by consecutive alternating partial sums. Endpoints
/// are exact rationals; width is certified <= 10^-digits.
inline PiEnclosure pi_enclosure(unsigned digits) {
    if (digits < 1 || digits > 1000)
        throw std::domain_error("pi_enclosure: digits must be in [1, 1000]");
    BigRational width(1, boost::multiprecision::pow(BigInt(10), digits));
    // split the width budget between the two series
    RatInterval a5 = detail::arctan_inv_bracket(5, width * BigRational(1, 32));
    RatInterval a239 = detail::arctan_inv_bracket(239, width * BigRational(1, 8));
    RatInterval pi = a5.scaled(BigRational(16)) - a239.scaled(BigRational(4));
    if (pi.width() > width) throw std::logic_error("pi_enclosure: width budget missed");
    if (!(BigRational(3) < pi.lo() && pi.hi() < BigRational(4)))
        throw std::logic_error("pi_enclosure: sanity bounds violated");
    return {pi, digits};
}

/// Enclosure of sqrt(pi) derived from a pi enclosure; two guard digits keep
/// the square-root truncation below the enclosure's own width.
inline RatInterval sqrt_pi_interval(const PiEnclosure& enc) {
    return sqrt_outward(enc.interval, enc.digits + 2);
}

}  // namespace wallislab
