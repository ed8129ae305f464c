#pragma once

#include "wallislab/decimal.hpp"
#include "wallislab/pi.hpp"
#include "wallislab/pi_scalar.hpp"
#include "wallislab/rational.hpp"

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wallislab {

/// Cooperative cancellation for long product chains; checked between
/// factors. Default-constructed token never cancels.
struct CancelToken {
    const std::atomic<bool>* flag = nullptr;
    bool cancelled() const { return flag != nullptr && flag->load(std::memory_order_relaxed); }
};

struct OperationCancelled : std::runtime_error {
    OperationCancelled() : std::runtime_error("operation cancelled") {}
};

/// The three algebraically identical ways of writing the partial Wallis
/// product a_n: factor pairs 2k/(2k-1) * 2k/(2k+1); the squared
/// even-over-odd-below product divided by 2n+1; and the squared
/// even-over-odd-above product times 2n+1.
enum class ProductForm { Paired, SquaredOverOdd, SquaredTimesOdd };

enum class EvalStrategy { Auto, Sequential, ProductTree };

namespace detail {

inline void check_cancel(const CancelToken& token) {
    if (token.cancelled()) throw OperationCancelled();
}

/// Balanced product over k in [lo, hi] of small factors f(k) = num/den.
/// Operand balance keeps the join multiplications near-equal-size, which
/// dominates runtime past ~10^4 factors.
template <class FactorFn>
BigRational balanced_product(std::uint64_t lo, std::uint64_t hi, FactorFn&& f,
                             const CancelToken& token) {
    if (hi - lo <= 64) {
        BigRational r(1);
        for (std::uint64_t k = lo; k <= hi; ++k) {
            auto [n, d] = f(k);
            r.mul_ratio(n, d);
        }
        check_cancel(token);
        return r;
    }
    std::uint64_t mid = lo + (hi - lo) / 2;
    return balanced_product(lo, mid, f, token) * balanced_product(mid + 1, hi, f, token);
}

constexpr std::uint64_t kTreeThreshold = 10000;

}  // namespace detail

/// Streams the Wallis product and both half-products exactly, one index at
/// a time. Used wherever a whole prefix of the sequence is needed; each
/// advance costs O(current size) thanks to reduced storage.
class WallisProductSequence {
public:
    void advance(const CancelToken& token = {}) {
        detail::check_cancel(token);
        std::uint64_t k = ++n_;
        paired_.mul_ratio(4 * k * k, (2 * k - 1) * (2 * k + 1));
        upper_.mul_ratio(2 * k, 2 * k - 1);
        lower_.mul_ratio(2 * k, 2 * k + 1);
    }

    std::uint64_t index() const { return n_; }
    const BigRational& paired() const { return paired_; }
    /// 2/1 * 4/3 * 6/5 ... 2n/(2n-1)
    const BigRational& upper_half() const { return upper_; }
    /// 2/3 * 4/5 * 6/7 ... 2n/(2n+1)
    const BigRational& lower_half() const { return lower_; }

    BigRational form_value(ProductForm form) const {
        switch (form) {
            case ProductForm::Paired: return paired_;
            case ProductForm::SquaredOverOdd:
                return upper_.pow(2) * BigRational(1, BigInt(2 * n_ + 1));
            case ProductForm::SquaredTimesOdd:
                return lower_.pow(2) * BigRational(BigInt(2 * n_ + 1));
        }
        throw std::invalid_argument("unknown ProductForm");
    }

private:
    std::uint64_t n_ = 0;
    BigRational paired_{1};
    BigRational upper_{1};
    BigRational lower_{1};
};

/// 2/1 * 4/3 * ... * 2n/(2n-1), exactly.
inline BigRational upper_half_product(std::uint64_t n, const CancelToken& token = {}) {
    if (n == 0) return BigRational(1);
    return detail::balanced_product(
        1, n, [](std::uint64_t k) { return std::pair<std::uint64_t, std::uint64_t>{2 * k, 2 * k - 1}; },
        token);
}

/// 2/3 * 4/5 * ... * 2n/(2n+1), exactly.
inline BigRational lower_half_product(std::uint64_t n, const CancelToken& token = {}) {
    if (n == 0) return BigRational(1);
    return detail::balanced_product(
        1, n, [](std::uint64_t k) { return std::pair<std::uint64_t, std::uint64_t>{2 * k, 2 * k + 1}; },
        token);
}

/// 1/2 * 3/4 * ... * (2n-1)/(2n), exactly.
inline BigRational odd_over_even_product(std::uint64_t n, const CancelToken& token = {}) {
    return upper_half_product(n, token).reciprocal();
}

/// Partial Wallis product a_n, identical for all three forms.
inline BigRational wallis_product(std::uint64_t n, ProductForm form = ProductForm::Paired,
                                  EvalStrategy strategy = EvalStrategy::Auto,
                                  const CancelToken& token = {}) {
    if (n == 0) throw std::domain_error("wallis_product: n must be >= 1");
    bool tree = strategy == EvalStrategy::ProductTree ||
                (strategy == EvalStrategy::Auto && n > detail::kTreeThreshold);
    if (form == ProductForm::Paired) {
        if (tree)
            return detail::balanced_product(
                1, n,
                [](std::uint64_t k) {
                    return std::pair<std::uint64_t, std::uint64_t>{4 * k * k, (2 * k - 1) * (2 * k + 1)};
                },
                token);
        BigRational r(1);
        for (std::uint64_t k = 1; k <= n; ++k) {
            r.mul_ratio(4 * k * k, (2 * k - 1) * (2 * k + 1));
            if ((k & 63u) == 0) detail::check_cancel(token);
        }
        return r;
    }
    if (form == ProductForm::SquaredOverOdd)
        return upper_half_product(n, token).pow(2) * BigRational(1, BigInt(2 * n + 1));
    return lower_half_product(n, token).pow(2) * BigRational(BigInt(2 * n + 1));
}

// ---------------------------------------------------------------------------
// Wallis integrals I_n = int_0^{pi/2} cos^n x dx and Gaussian moments
// E_n = int_0^inf x^n e^{-x^2} dx, as exact PiScalars.
//
// I_0 = pi/2, I_1 = 1, I_n = (n-1)/n * I_{n-2}.
// E_0 = sqrt(pi)/2 (held symbolically: the identification is the one axiom
// of the representation), E_1 = 1/2, E_{n+2} = (n+1)/2 * E_n.
// ---------------------------------------------------------------------------

inline PiScalar wallis_integral(unsigned n) {
    PiScalar v = (n % 2 == 0) ? PiScalar(BigRational(1, 2), 2) : PiScalar(BigRational(1), 0);
    for (unsigned m = (n % 2 == 0) ? 2 : 3; m <= n; m += 2)
        v = v * BigRational(m - 1, m);
    return v;
}

/// I_0 .. I_n via the recurrence, one pass.
inline std::vector<PiScalar> wallis_integrals_up_to(unsigned n) {
    std::vector<PiScalar> v(n + 1);
    v[0] = PiScalar(BigRational(1, 2), 2);
    if (n >= 1) v[1] = PiScalar(BigRational(1), 0);
    for (unsigned m = 2; m <= n; ++m) v[m] = v[m - 2] * BigRational(m - 1, m);
    return v;
}

inline BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

/// 1 * 3 * 5 * ... * (2m-1); empty product for m == 0.
inline BigInt double_factorial_odd(unsigned m) {
    BigInt f = 1;
    for (unsigned k = 1; k <= m; ++k) f *= 2 * k - 1;
    return f;
}

/// Closed forms: I_{2m} = (pi/2) * prod (2j-1)/(2j), I_{2m+1} = prod 2j/(2j+1).
inline PiScalar wallis_integral_closed(unsigned n) {
    if (n % 2 == 0) return PiScalar(odd_over_even_product(n / 2) * BigRational(1, 2), 2);
    return PiScalar(lower_half_product(n / 2), 0);
}

inline PiScalar moment_integral(unsigned n) {
    PiScalar v = (n % 2 == 0) ? PiScalar(BigRational(1, 2), 1) : PiScalar(BigRational(1, 2), 0);
    for (unsigned m = (n % 2 == 0) ? 2 : 3; m <= n; m += 2)
        v = v * BigRational(m - 1, 2);
    return v;
}

inline std::vector<PiScalar> moment_integrals_up_to(unsigned n) {
    std::vector<PiScalar> v(n + 1);
    v[0] = PiScalar(BigRational(1, 2), 1);
    if (n >= 1) v[1] = PiScalar(BigRational(1, 2), 0);
    for (unsigned m = 2; m <= n; ++m) v[m] = v[m - 2] * BigRational(m - 1, 2);
    return v;
}

/// Closed forms: E_{2m} = ((2m-1)!!/2^m) E_0, E_{2m+1} = m!/2.
inline PiScalar moment_integral_closed(unsigned n) {
    if (n % 2 == 0) {
        unsigned m = n / 2;
        return PiScalar(BigRational(double_factorial_odd(m),
                                    boost::multiprecision::pow(BigInt(2), m + 1)),
                        1);
    }
    return PiScalar(BigRational(factorial(n / 2), 2), 0);
}

// ---------------------------------------------------------------------------
// Central binomial coefficients and the Variation-5 ratio.
// ---------------------------------------------------------------------------

inline BigInt central_binomial(std::uint64_t n) {
    BigInt c = 1;
    for (std::uint64_t k = 1; k <= n; ++k) {
        c *= n + k;
        c /= k;  // C(n+k, k) is integral, division is exact
    }
    return c;
}

/// Streams C(2n, n) via C(2n, n) = C(2n-2, n-1) * 2(2n-1)/n.
class CentralBinomialSequence {
public:
    void advance() {
        ++n_;
        c_ *= 2 * (2 * n_ - 1);
        c_ /= n_;
    }
    std::uint64_t index() const { return n_; }
    const BigInt& value() const { return c_; }

private:
    std::uint64_t n_ = 0;
    BigInt c_ = 1;
};

/// Certified enclosure of C(2n,n) * sqrt(pi n) / 4^n. The square of the
/// ratio is the exact PiScalar C^2 n / 16^n * pi; the enclosure is its
/// interval square root. Width is inherited from the pi enclosure plus one
/// digit of square-root truncation.
inline RatInterval central_binomial_ratio(std::uint64_t n, unsigned digits) {
    if (n == 0) throw std::domain_error("central_binomial_ratio: n must be >= 1");
    if (digits < 1) throw std::domain_error("central_binomial_ratio: digits must be >= 1");
    BigInt c = central_binomial(n);
    PiScalar ratio_sq(BigRational(c * c * n, boost::multiprecision::pow(BigInt(16), static_cast<unsigned>(n))), 2);
    PiEnclosure enc = pi_enclosure(std::min(digits + 2, 1000u));
    return sqrt_outward(scalar_to_interval(ratio_sq, enc), digits + 1);
}

// ---------------------------------------------------------------------------
// Variations 1-5. Terms with an irrational sqrt factor are kept exact as
// (rational part, squared scale): term = rational_part * sqrt(scale_sq *
// pi^p), so squared terms are exact PiScalars and decimal rendering can be
// deferred to the reporting boundary.
// ---------------------------------------------------------------------------

enum class VariationId { V1, V2, V3, V4, V5 };

struct VariationTerm {
    BigRational rational_part;
    BigRational scale_sq;      // term = rational_part * sqrt(scale_sq * pi^p)
    bool pi_in_scale = false;  // p = 1 when true

    PiScalar squared() const {
        return PiScalar(rational_part.pow(2) * scale_sq, pi_in_scale ? 2u : 0u);
    }
};

/// Limit of a variation's terms: value, or 1/value when reciprocal is set
/// (1/sqrt(pi) and 2/pi are not representable with nonnegative pi powers).
struct LimitTarget {
    PiScalar value;
    bool reciprocal = false;
};

inline VariationTerm variation_term(VariationId v, std::uint64_t n) {
    if (n == 0) throw std::domain_error("variation_term: n must be >= 1");
    switch (v) {
        case VariationId::V1:
            return {upper_half_product(n), BigRational(1, BigInt(n)), false};
        case VariationId::V2:
            return {lower_half_product(n), BigRational(BigInt(n)), false};
        case VariationId::V3:
            return {odd_over_even_product(n), BigRational(BigInt(n)), false};
        case VariationId::V4: {
            BigRational r(1);
            for (std::uint64_t k = 1; k <= n; ++k)
                r.mul_ratio(4 * k * k - 1, 4 * k * k);
            return {r, BigRational(1), false};
        }
        case VariationId::V5: {
            BigInt c = central_binomial(n);
            return {BigRational(c, boost::multiprecision::pow(BigInt(4), static_cast<unsigned>(n))),
                    BigRational(BigInt(n)), true};
        }
    }
    throw std::invalid_argument("unknown VariationId");
}

inline LimitTarget variation_limit(VariationId v) {
    switch (v) {
        case VariationId::V1: return {PiScalar(BigRational(1), 1), false};       // sqrt(pi)
        case VariationId::V2: return {PiScalar(BigRational(1, 2), 1), false};    // sqrt(pi)/2
        case VariationId::V3: return {PiScalar(BigRational(1), 1), true};        // 1/sqrt(pi)
        case VariationId::V4: return {PiScalar(BigRational(1, 2), 2), true};     // 2/pi
        case VariationId::V5: return {PiScalar(BigRational(1), 0), false};       // 1
    }
    throw std::invalid_argument("unknown VariationId");
}

inline RatInterval limit_target_interval(const LimitTarget& t, const PiEnclosure& enc) {
    RatInterval iv = scalar_to_interval(t.value, enc);
    return t.reciprocal ? iv.reciprocal() : iv;
}

/// Enclosure of a variation term including its sqrt scale.
inline RatInterval variation_term_interval(const VariationTerm& term, const PiEnclosure& enc,
                                           unsigned digits) {
    RatInterval scale = term.pi_in_scale
                            ? enc.interval.scaled(term.scale_sq)
                            : RatInterval::point(term.scale_sq);
    return sqrt_outward(scale, digits).scaled(term.rational_part);
}

// ---------------------------------------------------------------------------
// SeqTable: tabulated sequence rows for CLI emission.
// ---------------------------------------------------------------------------

struct SeqRow {
    std::uint64_t n = 0;
    std::string exact;      // reduced fraction or PiScalar rendering
    std::string decimal;    // truncated decimal at the requested digits
    std::string target;     // decimal of the known limit, empty if none
    std::string abs_error;  // decimal of |term - target|, empty if no target
};

struct SeqTable {
    std::string name;
    std::vector<SeqRow> rows;
};

enum class SequenceId { WallisProduct, WallisIntegral, MomentIntegral, V1, V2, V3, V4, V5, BinomRatio };

inline SequenceId parse_sequence_id(const std::string& s) {
    if (s == "a_n") return SequenceId::WallisProduct;
    if (s == "I_n") return SequenceId::WallisIntegral;
    if (s == "E_n") return SequenceId::MomentIntegral;
    if (s == "v1") return SequenceId::V1;
    if (s == "v2") return SequenceId::V2;
    if (s == "v3") return SequenceId::V3;
    if (s == "v4") return SequenceId::V4;
    if (s == "v5") return SequenceId::V5;
    if (s == "binom_ratio") return SequenceId::BinomRatio;
    throw std::invalid_argument("unknown sequence name: " + s);
}

inline std::string sequence_name(SequenceId id) {
    switch (id) {
        case SequenceId::WallisProduct: return "a_n";
        case SequenceId::WallisIntegral: return "I_n";
        case SequenceId::MomentIntegral: return "E_n";
        case SequenceId::V1: return "v1";
        case SequenceId::V2: return "v2";
        case SequenceId::V3: return "v3";
        case SequenceId::V4: return "v4";
        case SequenceId::V5: return "v5";
        case SequenceId::BinomRatio: return "binom_ratio";
    }
    return "?";
}

namespace detail {

/// Decimal of an enclosure's value: midpoint truncated at `digits`, with
/// the enclosure carrying 5 guard digits so truncation is faithful except
/// within 10^-(digits+4) of a truncation boundary.
inline std::string interval_decimal(const RatInterval& iv, unsigned digits) {
    return to_decimal_string(iv.midpoint(), digits);
}

inline std::string error_decimal(const RatInterval& value_iv, const RatInterval& target_iv,
                                 unsigned digits) {
    BigRational err = (value_iv.midpoint() - target_iv.midpoint()).abs();
    return to_decimal_string(err, digits);
}

}  // namespace detail

/// Build a table of the requested sequence at indices start, start+step, ...
/// up to max_n (start is 0 for I_n/E_n, else 1).
inline SeqTable make_seq_table(SequenceId id, std::uint64_t max_n, std::uint64_t step,
                               unsigned digits, const CancelToken& token = {}) {
    if (max_n < 1) throw std::domain_error("make_seq_table: max_n must be >= 1");
    if (step < 1) throw std::domain_error("make_seq_table: step must be >= 1");
    PiEnclosure enc = pi_enclosure(std::min(digits + 5, 1000u));
    SeqTable table;
    table.name = sequence_name(id);

    auto push = [&](std::uint64_t n, const std::string& exact, const RatInterval& value_iv,
                    const RatInterval* target_iv) {
        SeqRow row;
        row.n = n;
        row.exact = exact;
        row.decimal = detail::interval_decimal(value_iv, digits);
        if (target_iv != nullptr) {
            row.target = detail::interval_decimal(*target_iv, digits);
            row.abs_error = detail::error_decimal(value_iv, *target_iv, digits);
        }
        table.rows.push_back(row);
    };

    switch (id) {
        case SequenceId::WallisProduct: {
            RatInterval target = scalar_to_interval(PiScalar(BigRational(1, 2), 2), enc);
            WallisProductSequence seq;
            for (std::uint64_t n = 1; n <= max_n; ++n) {
                seq.advance(token);
                if ((n - 1) % step != 0) continue;
                push(n, seq.paired().to_string(), RatInterval::point(seq.paired()), &target);
            }
            break;
        }
        case SequenceId::WallisIntegral:
        case SequenceId::MomentIntegral: {
            auto values = id == SequenceId::WallisIntegral
                              ? wallis_integrals_up_to(static_cast<unsigned>(max_n))
                              : moment_integrals_up_to(static_cast<unsigned>(max_n));
            for (std::uint64_t n = 0; n <= max_n; n += step)
                push(n, values[n].to_string(), scalar_to_interval(values[n], enc), nullptr);
            break;
        }
        case SequenceId::V1:
        case SequenceId::V2:
        case SequenceId::V3:
        case SequenceId::V4:
        case SequenceId::V5: {
            VariationId v = id == SequenceId::V1   ? VariationId::V1
                            : id == SequenceId::V2 ? VariationId::V2
                            : id == SequenceId::V3 ? VariationId::V3
                            : id == SequenceId::V4 ? VariationId::V4
                                                   : VariationId::V5;
            RatInterval target = limit_target_interval(variation_limit(v), enc);
            for (std::uint64_t n = 1; n <= max_n; n += step) {
                detail::check_cancel(token);
                VariationTerm term = variation_term(v, n);
                push(n, term.rational_part.to_string(),
                     variation_term_interval(term, enc, digits + 5), &target);
            }
            break;
        }
        case SequenceId::BinomRatio: {
            RatInterval target = RatInterval::point(BigRational(1));
            for (std::uint64_t n = 1; n <= max_n; n += step) {
                detail::check_cancel(token);
                VariationTerm term = variation_term(VariationId::V5, n);
                push(n, term.rational_part.to_string(),
                     central_binomial_ratio(n, digits + 5), &target);
            }
            break;
        }
    }
    return table;
}

}  // namespace wallislab
