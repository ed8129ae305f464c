#pragma once

#include "wallislab/decimal.hpp"
#include "wallislab/interval.hpp"
#include "wallislab/pi.hpp"
#include "wallislab/pi_scalar.hpp"
#include "wallislab/quadrature.hpp"
#include "wallislab/sequences.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace wallislab {

enum class Grade { Certified, Numeric };
enum class Verdict { Holds, Fails, Undecided };

inline const char* to_string(Grade g) { return g == Grade::Certified ? "CERTIFIED" : "NUMERIC"; }
inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "HOLDS";
        case Verdict::Fails: return "FAILS";
        case Verdict::Undecided: return "UNDECIDED";
    }
    return "?";
}

/// One checker run. CERTIFIED checks are decided in exact rational/interval
/// arithmetic (UNDECIDED = enclosure digits exhausted); NUMERIC checks rest
/// on error-estimated quadrature (UNDECIDED = margin within uncertainty).
struct CheckOutcome {
    std::string name;
    std::int64_t n = 0;
    Grade grade = Grade::Certified;
    Verdict verdict = Verdict::Undecided;
    std::string witness;
    unsigned digits_used = 0;  // enclosure digits that decided a certified check
};

/// Two-sided bound with exact rational endpoints, built from a proven
/// squeeze.
struct Enclosure {
    enum class Target { Pi, SqrtPi, ProbabilityIntegral };
    Target target = Target::Pi;
    std::int64_t n = 0;
    BigRational lo;
    BigRational hi;

    BigRational width() const { return hi - lo; }
};

inline const char* to_string(Enclosure::Target t) {
    switch (t) {
        case Enclosure::Target::Pi: return "pi";
        case Enclosure::Target::SqrtPi: return "sqrt_pi";
        case Enclosure::Target::ProbabilityIntegral: return "probability_integral";
    }
    return "?";
}

namespace detail {

/// Comparison with the caller's enclosure first, then up to four retries
/// with doubled digits. Returns the deciding digit count.
struct EscalatedOrder {
    Order order;
    unsigned digits_used;
};

inline EscalatedOrder compare_escalating(const PiScalar& a, const PiScalar& b,
                                         const PiEnclosure& enc) {
    Order o = scalar_compare(a, b, enc);
    unsigned digits = enc.digits;
    for (int retry = 0; retry < 4 && o == Order::Undecided && digits < 1000; ++retry) {
        digits = std::min(digits * 2, 1000u);
        o = scalar_compare(a, b, pi_enclosure(digits));
    }
    return {o, digits};
}

inline std::string scalar_witness(const PiScalar& x, const PiEnclosure& enc) {
    return x.to_string() + " ≈ " +
           to_decimal_string(scalar_to_interval(x, enc).midpoint(), 6);
}

inline Real rational_to_real(const BigRational& q) {
    return static_cast<Real>(q.numerator()) / static_cast<Real>(q.denominator());
}

/// Midpoint and halfwidth of a PiScalar's enclosure, as Reals.
inline std::pair<Real, Real> scalar_to_real_with_error(const PiScalar& x, unsigned digits) {
    if (x.is_rational()) return {rational_to_real(x.coeff()), Real(0)};
    RatInterval iv = scalar_to_interval(x, pi_enclosure(digits));
    return {rational_to_real(iv.midpoint()), rational_to_real(iv.width()) / 2};
}

/// Digits for converting exact scalars next to a quadrature result at
/// tolerance tol: enough that the conversion slack is negligible.
inline unsigned digits_for_tol(const Real& tol) {
    Real t = tol;
    unsigned d = 1;
    while (t < 1 && d < 40) {
        t *= 10;
        ++d;
    }
    return d + 6;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Certified checkers.
// ---------------------------------------------------------------------------

/// Strict log-convexity of the moments: E_n^2 < E_{n+1} E_{n-1}. Both sides
/// reduce to a rational and a rational multiple of pi, so the comparison is
/// an enclosure-decided certification.
inline CheckOutcome check_stieltjes(std::uint64_t n, const PiEnclosure& enc) {
    if (n < 1) throw std::domain_error("check_stieltjes: n must be >= 1");
    auto e = moment_integrals_up_to(static_cast<unsigned>(n + 1));
    PiScalar lhs = e[n].squared();
    PiScalar rhs = e[n + 1] * e[n - 1];
    auto [order, digits] = detail::compare_escalating(lhs, rhs, enc);
    CheckOutcome out;
    out.name = "stieltjes";
    out.n = static_cast<std::int64_t>(n);
    out.grade = Grade::Certified;
    out.digits_used = digits;
    PiEnclosure wenc = pi_enclosure(8);
    out.witness = "E_" + std::to_string(n) + "² = " + detail::scalar_witness(lhs, wenc) +
                  " vs E_" + std::to_string(n + 1) + "·E_" + std::to_string(n - 1) + " = " +
                  detail::scalar_witness(rhs, wenc);
    out.verdict = order == Order::Less      ? Verdict::Holds
                  : order == Order::Undecided ? Verdict::Undecided
                                              : Verdict::Fails;
    return out;
}

/// Both chains of the moment squeeze with E_0 = sqrt(pi)/2 substituted and
/// everything squared: (2n/(2n+1)) P_n^2/n <= pi <= P_n^2/n, where P_n is
/// the even-over-odd-below half product. Strictness is not required by the
/// squeeze, so Equal outcomes (impossible for pi, but harmless) pass.
inline CheckOutcome check_moment_squeeze(std::uint64_t n, const PiEnclosure& enc) {
    if (n < 1) throw std::domain_error("check_moment_squeeze: n must be >= 1");
    BigRational upper_r = upper_half_product(n).pow(2) * BigRational(1, BigInt(n));
    BigRational lower_r = upper_r * BigRational(BigInt(2 * n), BigInt(2 * n + 1));
    PiScalar pi_scalar(BigRational(1), 2);
    auto [lo_order, d1] = detail::compare_escalating(PiScalar::rational(lower_r), pi_scalar, enc);
    auto [hi_order, d2] = detail::compare_escalating(pi_scalar, PiScalar::rational(upper_r), enc);
    CheckOutcome out;
    out.name = "moment_squeeze";
    out.n = static_cast<std::int64_t>(n);
    out.grade = Grade::Certified;
    out.digits_used = std::max(d1, d2);
    out.witness = to_decimal_string(lower_r, 6) + " ≤ π ≤ " +
                  to_decimal_string(upper_r, 6);
    auto ok = [](Order o) { return o == Order::Less || o == Order::Equal; };
    if (ok(lo_order) && ok(hi_order))
        out.verdict = Verdict::Holds;
    else if (lo_order == Order::Undecided || hi_order == Order::Undecided)
        out.verdict = Verdict::Undecided;
    else
        out.verdict = Verdict::Fails;
    return out;
}

/// I_{n+1} < I_n. Mixed parity makes this a rational vs rational*pi
/// comparison.
inline CheckOutcome check_wallis_monotone(std::uint64_t n, const PiEnclosure& enc) {
    auto iv = wallis_integrals_up_to(static_cast<unsigned>(n + 1));
    auto [order, digits] = detail::compare_escalating(iv[n + 1], iv[n], enc);
    CheckOutcome out;
    out.name = "wallis_monotone";
    out.n = static_cast<std::int64_t>(n);
    out.grade = Grade::Certified;
    out.digits_used = digits;
    PiEnclosure wenc = pi_enclosure(8);
    out.witness = "I_" + std::to_string(n + 1) + " = " + detail::scalar_witness(iv[n + 1], wenc) +
                  " vs I_" + std::to_string(n) + " = " + detail::scalar_witness(iv[n], wenc);
    out.verdict = order == Order::Less      ? Verdict::Holds
                  : order == Order::Undecided ? Verdict::Undecided
                                              : Verdict::Fails;
    return out;
}

/// n I_n I_{n-1} = pi/2, exactly: pi powers sum to 2 and the rational
/// coefficients multiply to 1/2. No enclosure involved.
inline CheckOutcome check_product_identity(std::uint64_t n) {
    if (n < 1) throw std::domain_error("check_product_identity: n must be >= 1");
    auto iv = wallis_integrals_up_to(static_cast<unsigned>(n));
    PiScalar lhs = BigRational(BigInt(n)) * iv[n] * iv[n - 1];
    PiScalar rhs(BigRational(1, 2), 2);
    CheckOutcome out;
    out.name = "product_identity";
    out.n = static_cast<std::int64_t>(n);
    out.grade = Grade::Certified;
    out.witness = std::to_string(n) + "·I_" + std::to_string(n) + "·I_" +
                  std::to_string(n - 1) + " = " + lhs.to_string();
    out.verdict = lhs == rhs ? Verdict::Holds : Verdict::Fails;
    return out;
}

/// The two-sided bound behind sqrt(n) I_n -> sqrt(pi/2):
/// (n/(n+1)) pi/2 <= n I_n^2 <= pi/2. For even n the middle has pi power
/// k = 4, so this check exercises pi^2 enclosures.
inline CheckOutcome check_sqrt_limit_bounds(std::uint64_t n, const PiEnclosure& enc) {
    if (n < 1) throw std::domain_error("check_sqrt_limit_bounds: n must be >= 1");
    auto iv = wallis_integrals_up_to(static_cast<unsigned>(n));
    PiScalar mid = BigRational(BigInt(n)) * iv[n].squared();
    PiScalar hi(BigRational(1, 2), 2);
    PiScalar lo = hi * BigRational(BigInt(n), BigInt(n + 1));
    auto [lo_order, d1] = detail::compare_escalating(lo, mid, enc);
    auto [hi_order, d2] = detail::compare_escalating(mid, hi, enc);
    CheckOutcome out;
    out.name = "sqrt_limit_bounds";
    out.n = static_cast<std::int64_t>(n);
    out.grade = Grade::Certified;
    out.digits_used = std::max(d1, d2);
    PiEnclosure wenc = pi_enclosure(8);
    out.witness = detail::scalar_witness(lo, wenc) + " ≤ n·I_n² = " +
                  detail::scalar_witness(mid, wenc) + " ≤ " + detail::scalar_witness(hi, wenc);
    auto ok = [](Order o) { return o == Order::Less || o == Order::Equal; };
    if (ok(lo_order) && ok(hi_order))
        out.verdict = Verdict::Holds;
    else if (lo_order == Order::Undecided || hi_order == Order::Undecided)
        out.verdict = Verdict::Undecided;
    else
        out.verdict = Verdict::Fails;
    return out;
}

// ---------------------------------------------------------------------------
// Enclosure generators.
// ---------------------------------------------------------------------------

/// pi in [2 a_n, 2 a_n (2n+1)/(2n)], the rearranged product squeeze.
/// Width is exactly a_n / n.
inline Enclosure pi_enclosure_wallis(std::uint64_t n, EvalStrategy strategy = EvalStrategy::Auto,
                                     const CancelToken& token = {}) {
    if (n < 1) throw std::domain_error("pi_enclosure_wallis: n must be >= 1");
    BigRational a = wallis_product(n, ProductForm::Paired, strategy, token);
    Enclosure out;
    out.target = Enclosure::Target::Pi;
    out.n = static_cast<std::int64_t>(n);
    out.lo = a * BigRational(2);
    out.hi = out.lo * BigRational(BigInt(2 * n + 1), BigInt(2 * n));
    return out;
}

/// sqrt(pi) from the squared moment-squeeze chain: first pi is pinned in
/// [2 a_n, a_n (2n+1)/n] with exact rational endpoints, then an interval
/// square root is taken with digits scaled to keep its truncation well
/// below the chain's own width.
inline Enclosure sqrtpi_enclosure_moments(std::uint64_t n, const CancelToken& token = {}) {
    if (n < 1) throw std::domain_error("sqrtpi_enclosure_moments: n must be >= 1");
    BigRational a = wallis_product(n, ProductForm::Paired, EvalStrategy::Auto, token);
    BigRational lo = a * BigRational(2);
    BigRational hi = a * BigRational(BigInt(2 * n + 1), BigInt(n));
    unsigned digits = 5;
    for (std::uint64_t m = n; m > 0; m /= 10) ++digits;
    RatInterval root = sqrt_outward(RatInterval(lo, hi), digits);
    Enclosure out;
    out.target = Enclosure::Target::SqrtPi;
    out.n = static_cast<std::int64_t>(n);
    out.lo = root.lo();
    out.hi = root.hi();
    return out;
}

// ---------------------------------------------------------------------------
// Numeric-grade checks (quadrature based).
// ---------------------------------------------------------------------------

/// The sandwich (1-x^2)^n <= glimpse <= (1+x^2)^{-n} in integral form:
/// I_{2n+1} <= (1/sqrt(n)) int_0^{sqrt(n)} e^{-x^2} dx <= I_{2n-2}.
/// Ends are exact (Wallis integrals); the middle is quadrature, so the
/// verdict is NUMERIC: margins must clear the reported uncertainty.
inline CheckOutcome check_spivak_sandwich(std::uint64_t n, const Real& tol,
                                          std::uint64_t max_evals = default_max_evals()) {
    if (n < 1) throw std::domain_error("check_spivak_sandwich: n must be >= 1");
    unsigned digits = detail::digits_for_tol(tol);
    auto [left, left_err] =
        detail::scalar_to_real_with_error(wallis_integral(static_cast<unsigned>(2 * n + 1)), digits);
    auto [right, right_err] =
        detail::scalar_to_real_with_error(wallis_integral(static_cast<unsigned>(2 * n - 2)), digits);
    QuadResult mid_q = gauss_truncated(sqrt(Real(n)), tol, max_evals);
    Real inv_sqrt_n = 1 / sqrt(Real(n));
    Real mid = mid_q.value * inv_sqrt_n;
    // a check run at tolerance tol can certify margins beyond tol, no better
    Real unc = (mid_q.total_uncertainty() + tol) * inv_sqrt_n + left_err + right_err + Real("1e-45");

    CheckOutcome out;
    out.name = "spivak_sandwich";
    out.n = static_cast<std::int64_t>(n);
    out.grade = Grade::Numeric;
    out.witness = "I_" + std::to_string(2 * n + 1) + " ≈ " + left.str(8) +
                  " ≤ " + mid.str(8) + " ≤ I_" + std::to_string(2 * n - 2) +
                  " ≈ " + right.str(8) + " (unc " + unc.str(3) + ")";
    Real margin_left = mid - left;
    Real margin_right = right - mid;
    if (!mid_q.tolerance_met || margin_left <= unc || margin_right <= unc) {
        bool certain_violation = margin_left < -unc || margin_right < -unc;
        out.verdict = certain_violation ? Verdict::Fails : Verdict::Undecided;
    } else {
        out.verdict = Verdict::Holds;
    }
    return out;
}

/// int_0^inf (1+x^2)^{-n} dx = I_{2n-2}, checked numerically.
inline CheckOutcome check_disguise_reciprocal(std::uint64_t n, const Real& tol,
                                              std::uint64_t max_evals = default_max_evals()) {
    if (n < 1) throw std::domain_error("check_disguise_reciprocal: n must be >= 1");
    unsigned digits = detail::digits_for_tol(tol);
    auto [exact, exact_err] =
        detail::scalar_to_real_with_error(wallis_integral(static_cast<unsigned>(2 * n - 2)), digits);
    QuadResult q = integrate(reciprocal_pow(static_cast<int>(n)), tol, max_evals);
    Real diff = abs(q.value - exact);
    Real allowed = q.total_uncertainty() + tol + exact_err + Real("1e-45");
    CheckOutcome out;
    out.name = "disguise_reciprocal";
    out.n = static_cast<std::int64_t>(n);
    out.grade = Grade::Numeric;
    out.witness = "quad " + q.value.str(10) + " vs I_" + std::to_string(2 * n - 2) + " ≈ " +
                  exact.str(10) + " (diff " + diff.str(3) + ", allowed " + allowed.str(3) + ")";
    out.verdict = !q.tolerance_met ? Verdict::Undecided
                  : diff <= allowed ? Verdict::Holds
                                    : Verdict::Fails;
    return out;
}

/// int_0^1 (1-x^2)^n dx = I_{2n+1}, checked numerically.
inline CheckOutcome check_disguise_poly(std::uint64_t n, const Real& tol,
                                        std::uint64_t max_evals = default_max_evals()) {
    if (n < 1) throw std::domain_error("check_disguise_poly: n must be >= 1");
    Real exact = detail::rational_to_real(wallis_integral(static_cast<unsigned>(2 * n + 1)).coeff());
    QuadResult q = integrate(poly_pow(static_cast<int>(n)), tol, max_evals);
    Real diff = abs(q.value - exact);
    Real allowed = q.total_uncertainty() + tol + Real("1e-45");
    CheckOutcome out;
    out.name = "disguise_poly";
    out.n = static_cast<std::int64_t>(n);
    out.grade = Grade::Numeric;
    out.witness = "quad " + q.value.str(10) + " vs I_" + std::to_string(2 * n + 1) + " = " +
                  exact.str(10) + " (diff " + diff.str(3) + ", allowed " + allowed.str(3) + ")";
    out.verdict = !q.tolerance_met ? Verdict::Undecided
                  : diff <= allowed ? Verdict::Holds
                                    : Verdict::Fails;
    return out;
}

// ---------------------------------------------------------------------------
// Probability-integral enclosure from the Wallis-integral squeeze.
// ---------------------------------------------------------------------------

/// Rational upper bound on e^{-n}: the reciprocal of a partial sum of
/// e^n = sum n^k/k!.
inline BigRational exp_neg_upper_bound(std::uint64_t n) {
    BigRational sum(1);
    BigRational term(1);
    for (std::uint64_t k = 1; k <= 3 * n + 10; ++k) {
        term *= BigRational(BigInt(n), BigInt(k));
        sum += term;
    }
    return sum.reciprocal();
}

struct ProbabilityIntegralEnclosure {
    Enclosure truncated;    // int_0^{sqrt(n)} e^{-x^2} dx
    Enclosure full;         // int_0^inf, upper end widened by the tail bound
    BigRational tail_bound; // rational bound >= int_{sqrt(n)}^inf e^{-x^2} dx
};

/// sqrt(n) I_{2n+1} <= int_0^{sqrt(n)} e^{-x^2} dx <= sqrt(n) I_{2n-2},
/// with endpoints delivered through interval square roots of the exact
/// squared values (n I^2 is a PiScalar with k in {0, 4}, keeping the
/// certification path rational). The tail int_{sqrt(n)}^inf is bounded
/// separately (<= e^{-n}/(2 sqrt(n))) and added to the upper end of the
/// full-integral enclosure only.
inline ProbabilityIntegralEnclosure probability_integral_enclosure(std::uint64_t n) {
    if (n < 2) throw std::domain_error("probability_integral_enclosure: n must be >= 2");
    unsigned digits = 8;
    for (std::uint64_t m = n; m > 0; m /= 10) ++digits;
    PiEnclosure enc = pi_enclosure(digits);

    PiScalar low_sq = BigRational(BigInt(n)) * wallis_integral(static_cast<unsigned>(2 * n + 1)).squared();
    PiScalar high_sq = BigRational(BigInt(n)) * wallis_integral(static_cast<unsigned>(2 * n - 2)).squared();
    BigRational lo = sqrt_outward(scalar_to_interval(low_sq, enc), digits).lo();
    BigRational hi = sqrt_outward(scalar_to_interval(high_sq, enc), digits).hi();

    ProbabilityIntegralEnclosure out;
    out.truncated = {Enclosure::Target::ProbabilityIntegral, static_cast<std::int64_t>(n), lo, hi};
    BigInt isqrt_n = boost::multiprecision::sqrt(BigInt(n));
    out.tail_bound = exp_neg_upper_bound(n) * BigRational(1, 2 * isqrt_n);
    out.full = {Enclosure::Target::ProbabilityIntegral, static_cast<std::int64_t>(n), lo,
                hi + out.tail_bound};
    return out;
}

}  // namespace wallislab
