#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace wallislab {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always stored reduced with positive
/// denominator. All arithmetic is exact; canonical form is maintained
/// operation by operation (cross-gcd multiply, mpq-style add) so that
/// long product chains never accumulate removable factors.
class BigRational {
public:
    BigRational() : num_(0), den_(1) {}
    BigRational(long long n) : num_(n), den_(1) {}          // NOLINT(google-explicit-constructor)
    BigRational(BigInt n) : num_(std::move(n)), den_(1) {}  // NOLINT(google-explicit-constructor)

    BigRational(BigInt numerator, BigInt denominator)
        : num_(std::move(numerator)), den_(std::move(denominator)) {
        if (den_ == 0) throw std::domain_error("BigRational: zero denominator");
        normalize();
    }

    const BigInt& numerator() const { return num_; }
    const BigInt& denominator() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    BigRational operator-() const {
        BigRational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    BigRational& operator+=(const BigRational& o) {
        // mpq-style: factor out g = gcd(den, o.den) before cross-multiplying.
        BigInt g = boost::multiprecision::gcd(den_, o.den_);
        if (g == 1) {
            num_ = num_ * o.den_ + o.num_ * den_;
            den_ *= o.den_;
        } else {
            BigInt t = num_ * (o.den_ / g) + o.num_ * (den_ / g);
            BigInt g2 = boost::multiprecision::gcd(t, g);
            num_ = t / g2;
            den_ = (den_ / g) * (o.den_ / g2);
        }
        if (num_ == 0) den_ = 1;
        return *this;
    }

    BigRational& operator-=(const BigRational& o) { return *this += -o; }

    BigRational& operator*=(const BigRational& o) {
        BigInt g1 = boost::multiprecision::gcd(num_, o.den_);
        BigInt g2 = boost::multiprecision::gcd(o.num_, den_);
        num_ = (num_ / g1) * (o.num_ / g2);
        den_ = (den_ / g2) * (o.den_ / g1);
        if (num_ == 0) den_ = 1;
        return *this;
    }

    BigRational& operator/=(const BigRational& o) {
        if (o.num_ == 0) throw std::domain_error("BigRational: division by zero");
        BigRational inv;
        if (o.num_ < 0) {
            inv.num_ = -o.den_;
            inv.den_ = -o.num_;
        } else {
            inv.num_ = o.den_;
            inv.den_ = o.num_;
        }
        return *this *= inv;
    }

    /// Multiply by n/d where both fit in 64 bits. Fast path for product
    /// chains: the big operands are reduced modulo the small ones, so the
    /// gcds cost one big-by-small division each.
    BigRational& mul_ratio(std::uint64_t n, std::uint64_t d) {
        if (d == 0) throw std::domain_error("BigRational: zero denominator");
        if (n == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        std::uint64_t g0 = std::gcd(n, d);
        n /= g0;
        d /= g0;
        std::uint64_t r1 = (boost::multiprecision::abs(num_) % d).convert_to<std::uint64_t>();
        std::uint64_t g1 = std::gcd(r1, d);
        std::uint64_t r2 = (den_ % n).convert_to<std::uint64_t>();
        std::uint64_t g2 = std::gcd(r2, n);
        num_ = (num_ / g1) * (n / g2);
        den_ = (den_ / g2) * (d / g1);
        return *this;
    }

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

    friend bool operator==(const BigRational& a, const BigRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const BigRational& a, const BigRational& b) { return !(a == b); }
    friend bool operator<(const BigRational& a, const BigRational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const BigRational& a, const BigRational& b) { return b < a; }
    friend bool operator<=(const BigRational& a, const BigRational& b) { return !(b < a); }
    friend bool operator>=(const BigRational& a, const BigRational& b) { return !(a < b); }

    BigRational abs() const { return num_ < 0 ? -*this : *this; }

    BigRational reciprocal() const {
        if (num_ == 0) throw std::domain_error("BigRational: reciprocal of zero");
        BigRational r;
        if (num_ < 0) {
            r.num_ = -den_;
            r.den_ = -num_;
        } else {
            r.num_ = den_;
            r.den_ = num_;
        }
        return r;
    }

    /// x^k for k >= 0. Coprime numerator/denominator stay coprime.
    BigRational pow(unsigned k) const {
        BigRational r;
        r.num_ = boost::multiprecision::pow(num_, k);
        r.den_ = boost::multiprecision::pow(den_, k);
        if (k == 0) r = BigRational(1);
        return r;
    }

    /// "p/q", or just "p" for integers.
    std::string to_string() const {
        std::string s = num_.str();
        if (den_ != 1) {
            s += '/';
            s += den_.str();
        }
        return s;
    }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_;
    BigInt den_;  // > 0, gcd(|num_|, den_) == 1
};

}  // namespace wallislab
