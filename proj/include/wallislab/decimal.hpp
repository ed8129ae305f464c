#pragma once

#include "wallislab/rational.hpp"

#include <stdexcept>
#include <string>

namespace wallislab {

/// Round-toward-zero decimal rendering with exactly `digits` fractional
/// digits (none, and no point, when digits == 0). Truncation never moves a
/// value across a threshold, which is what enclosure reports need. A minus
/// sign is emitted only when the truncated value is nonzero.
inline std::string to_decimal_string(const BigRational& x, unsigned digits) {
    BigInt p10 = boost::multiprecision::pow(BigInt(10), digits);
    BigInt scaled = boost::multiprecision::abs(x.numerator()) * p10 / x.denominator();
    BigInt ip = scaled / p10;
    BigInt fp = scaled % p10;
    std::string s;
    if (x.sign() < 0 && scaled != 0) s += '-';
    s += ip.str();
    if (digits > 0) {
        std::string f = fp.str();
        s += '.';
        s.append(digits - f.size(), '0');
        s += f;
    }
    return s;
}

/// Truncate toward zero at `digits` fractional digits, as an exact rational.
inline BigRational truncate_toward_zero(const BigRational& x, unsigned digits) {
    BigInt p10 = boost::multiprecision::pow(BigInt(10), digits);
    BigInt scaled = x.numerator() * p10 / x.denominator();  // cpp_int / truncates toward zero
    return BigRational(scaled, p10);
}

/// Parse "[-]ddd[.ddd]" into an exact rational. Used to ingest frozen
/// decimal oracle constants; no exponent form.
inline BigRational decimal_to_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("decimal_to_rational: empty string");
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '-' || text[i] == '+') {
        neg = text[i] == '-';
        ++i;
    }
    BigInt num = 0;
    BigInt den = 1;
    bool seen_digit = false;
    bool after_point = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (after_point) throw std::invalid_argument("decimal_to_rational: two points");
            after_point = true;
        } else if (c >= '0' && c <= '9') {
            num = num * 10 + (c - '0');
            if (after_point) den *= 10;
            seen_digit = true;
        } else {
            throw std::invalid_argument("decimal_to_rational: bad character in '" + text + "'");
        }
    }
    if (!seen_digit) throw std::invalid_argument("decimal_to_rational: no digits");
    if (neg) num = -num;
    return BigRational(num, den);
}

}  // namespace wallislab
