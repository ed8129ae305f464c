#pragma once

#include "wallislab/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace wallislab {

/// Closed interval with exact rational endpoints. Endpoint arithmetic is
/// itself exact, so every operation here is outward-conservative by
/// construction: the true value of an operation on member points lies in
/// the result.
class RatInterval {
public:
    RatInterval(BigRational lo, BigRational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (hi_ < lo_) throw std::invalid_argument("RatInterval: lo > hi");
    }

    static RatInterval point(BigRational x) { return RatInterval(x, x); }

    const BigRational& lo() const { return lo_; }
    const BigRational& hi() const { return hi_; }
    BigRational width() const { return hi_ - lo_; }
    BigRational midpoint() const { return (lo_ + hi_) * BigRational(1, 2); }

    bool contains(const BigRational& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const RatInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool intersects(const RatInterval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
    bool disjoint_below(const RatInterval& o) const { return hi_ < o.lo_; }

    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return {a.lo_ + b.lo_, a.hi_ + b.hi_};
    }
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
        return {a.lo_ - b.hi_, a.hi_ - b.lo_};
    }
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
        BigRational p1 = a.lo_ * b.lo_;
        BigRational p2 = a.lo_ * b.hi_;
        BigRational p3 = a.hi_ * b.lo_;
        BigRational p4 = a.hi_ * b.hi_;
        return {std::min(std::min(p1, p2), std::min(p3, p4)),
                std::max(std::max(p1, p2), std::max(p3, p4))};
    }

    RatInterval scaled(const BigRational& q) const {
        if (q.sign() >= 0) return {lo_ * q, hi_ * q};
        return {hi_ * q, lo_ * q};
    }

    /// x^k with k >= 0, via repeated interval multiplication.
    RatInterval pow(unsigned k) const {
        RatInterval r = point(BigRational(1));
        RatInterval base = *this;
        while (k > 0) {
            if (k & 1u) r = r * base;
            base = base * base;
            k >>= 1u;
        }
        return r;
    }

    /// Reciprocal of an interval not containing zero.
    RatInterval reciprocal() const {
        if (lo_.sign() <= 0 && hi_.sign() >= 0)
            throw std::domain_error("RatInterval: reciprocal of interval containing zero");
        return {hi_.reciprocal(), lo_.reciprocal()};
    }

    std::string to_string() const { return "[" + lo_.to_string() + ", " + hi_.to_string() + "]"; }

private:
    BigRational lo_;
    BigRational hi_;
};

namespace detail {

/// floor(x * 10^(2*digits)) for x >= 0.
inline BigInt floor_scaled(const BigRational& x, const BigInt& scale_sq) {
    return x.numerator() * scale_sq / x.denominator();
}

inline BigInt ceil_scaled(const BigRational& x, const BigInt& scale_sq) {
    BigInt t = x.numerator() * scale_sq;
    BigInt q = t / x.denominator();
    if (q * x.denominator() != t) ++q;
    return q;
}

}  // namespace detail

/// Enclosure of sqrt over a nonnegative interval. Endpoints are rationals
/// with denominator 10^digits; lower endpoint squares to <= lo, upper
/// squares to >= hi (integer-sqrt construction, verified in tests by
/// squaring).
inline RatInterval sqrt_outward(const RatInterval& x, unsigned digits) {
    if (x.lo().sign() < 0) throw std::domain_error("sqrt_outward: negative interval");
    BigInt scale = boost::multiprecision::pow(BigInt(10), digits);
    BigInt scale_sq = scale * scale;
    BigInt nlo = detail::floor_scaled(x.lo(), scale_sq);
    BigInt rlo = boost::multiprecision::sqrt(nlo);  // floor sqrt
    BigInt nhi = detail::ceil_scaled(x.hi(), scale_sq);
    BigInt rhi = boost::multiprecision::sqrt(nhi);
    if (rhi * rhi < nhi) ++rhi;
    return {BigRational(rlo, scale), BigRational(rhi, scale)};
}

}  // namespace wallislab
