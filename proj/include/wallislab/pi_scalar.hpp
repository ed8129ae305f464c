#pragma once

#include "wallislab/interval.hpp"
#include "wallislab/pi.hpp"
#include "wallislab/rational.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace wallislab {

/// Exact value of the form coeff * pi^(k/2) with k >= 0. This is the value
/// algebra every closed form in the library lives in: odd Wallis integrals
/// and odd moments are k=0, even moments are k=1 (multiples of sqrt(pi)),
/// even Wallis integrals and pi/2 itself are k=2, and squares of even
/// Wallis integrals reach k=4.
///
/// Multiplication adds powers exactly. Addition requires equal powers;
/// the canonical zero (coeff 0, k 0) is compatible with any power since
/// 0 * pi^(k/2) = 0.
class PiScalar {
public:
    PiScalar() : coeff_(0), k_(0) {}
    explicit PiScalar(BigRational coeff, unsigned half_pi_power = 0)
        : coeff_(std::move(coeff)), k_(coeff_.is_zero() ? 0 : half_pi_power) {}

    static PiScalar rational(BigRational q) { return PiScalar(std::move(q), 0); }

    const BigRational& coeff() const { return coeff_; }
    unsigned half_pi_power() const { return k_; }
    bool is_zero() const { return coeff_.is_zero(); }
    bool is_rational() const { return k_ == 0; }

    friend PiScalar operator*(const PiScalar& a, const PiScalar& b) {
        return PiScalar(a.coeff_ * b.coeff_, a.k_ + b.k_);
    }
    friend PiScalar operator*(const PiScalar& a, const BigRational& q) {
        return PiScalar(a.coeff_ * q, a.k_);
    }
    friend PiScalar operator*(const BigRational& q, const PiScalar& a) { return a * q; }

    friend PiScalar operator+(const PiScalar& a, const PiScalar& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.k_ != b.k_)
            throw std::domain_error("PiScalar: addition of different pi powers (k=" +
                                    std::to_string(a.k_) + " vs k=" + std::to_string(b.k_) + ")");
        return PiScalar(a.coeff_ + b.coeff_, a.k_);
    }
    friend PiScalar operator-(const PiScalar& a, const PiScalar& b) {
        return a + PiScalar(-b.coeff_, b.k_);
    }

    PiScalar squared() const { return *this * *this; }

    friend bool operator==(const PiScalar& a, const PiScalar& b) {
        return a.k_ == b.k_ && a.coeff_ == b.coeff_;
    }
    friend bool operator!=(const PiScalar& a, const PiScalar& b) { return !(a == b); }

    /// "0", "3/8·√π", "1/2·π", "9/64·π^2", "5/4·π^(3/2)", plain fraction for k=0.
    std::string to_string() const {
        if (coeff_.is_zero()) return "0";
        if (k_ == 0) return coeff_.to_string();
        std::string pi_part;
        if (k_ == 1)
            pi_part = "√π";  // √π
        else if (k_ == 2)
            pi_part = "π";
        else if (k_ % 2 == 0)
            pi_part = "π^" + std::to_string(k_ / 2);
        else
            pi_part = "π^(" + std::to_string(k_) + "/2)";
        return coeff_.to_string() + "·" + pi_part;
    }

private:
    BigRational coeff_;
    unsigned k_;
};

/// Interval certainly containing coeff * pi^(k/2), using the given pi
/// enclosure (and its derived sqrt(pi) enclosure for odd k).
inline RatInterval scalar_to_interval(const PiScalar& x, const PiEnclosure& enc) {
    if (x.half_pi_power() == 0) return RatInterval::point(x.coeff());
    RatInterval base = enc.interval.pow(x.half_pi_power() / 2);
    if (x.half_pi_power() % 2 == 1) base = base * sqrt_pi_interval(enc);
    return base.scaled(x.coeff());
}

enum class Order { Less, Greater, Equal, Undecided };

inline const char* to_string(Order o) {
    switch (o) {
        case Order::Less: return "LESS";
        case Order::Greater: return "GREATER";
        case Order::Equal: return "EQUAL";
        case Order::Undecided: return "UNDECIDED";
    }
    return "?";
}

/// Certified comparison. Equal powers compare exactly (no enclosure
/// needed); mixed powers compare via disjointness of enclosure intervals,
/// returning Undecided when the enclosures overlap. pi being irrational,
/// mixed-power values can never be equal, so Undecided always resolves
/// under a tighter enclosure.
inline Order scalar_compare(const PiScalar& a, const PiScalar& b, const PiEnclosure& enc) {
    if (a == b) return Order::Equal;
    if (a.half_pi_power() == b.half_pi_power() || a.is_zero() || b.is_zero()) {
        // pi^(k/2) > 0, so the coefficient decides; zero compares by sign.
        int as = a.coeff().sign();
        int bs = b.coeff().sign();
        if (a.half_pi_power() == b.half_pi_power())
            return a.coeff() < b.coeff() ? Order::Less : Order::Greater;
        if (a.is_zero()) return bs > 0 ? Order::Less : Order::Greater;
        return as > 0 ? Order::Greater : Order::Less;
    }
    RatInterval ia = scalar_to_interval(a, enc);
    RatInterval ib = scalar_to_interval(b, enc);
    if (ia.disjoint_below(ib)) return Order::Less;
    if (ib.disjoint_below(ia)) return Order::Greater;
    return Order::Undecided;
}

}  // namespace wallislab
