#pragma once

#include "wallislab/decimal.hpp"
#include "wallislab/inequalities.hpp"
#include "wallislab/pi.hpp"
#include "wallislab/quadrature.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace wallislab {

/// F(t) = int_0^1 e^{-t^2 (1+x^2)}/(1+x^2) dx and G(t) = (int_0^t e^{-x^2} dx)^2
/// satisfy F + G = pi/4 identically; F decays like e^{-t^2} pi/4, handing the
/// probability integral over as t grows. The pi/4 reference is always the
/// Machin enclosure so this route stays independent of the Wallis-squeeze
/// one.
///
/// Domain cap: t <= 40 on all entry points.

inline constexpr double kBorweinTCap = 40.0;

struct NegativeRadicand : std::runtime_error {
    explicit NegativeRadicand(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void check_t(const Real& t, const char* fn) {
    if (t < 0) throw std::domain_error(std::string(fn) + ": t must be >= 0");
    if (!(t <= Real(kBorweinTCap))) throw std::domain_error(std::string(fn) + ": t exceeds domain cap 40");
}

/// Machin pi/4 as (midpoint, halfwidth) in working precision.
inline std::pair<Real, Real> quarter_pi_ref(const Real& tol) {
    PiEnclosure enc = pi_enclosure(digits_for_tol(tol));
    RatInterval q = enc.interval.scaled(BigRational(1, 4));
    return {rational_to_real(q.midpoint()), rational_to_real(q.width()) / 2};
}

}  // namespace detail

inline QuadResult F_of_t(const Real& t, const Real& tol,
                         std::uint64_t max_evals = default_max_evals()) {
    detail::check_t(t, "F_of_t");
    QuadResult r = integrate(borwein_f(t), tol, max_evals);
    // decay bound, checked on every evaluation
    auto [quarter_pi, qp_err] = detail::quarter_pi_ref(tol);
    Real bound = exp(-t * t) * quarter_pi;
    if (r.value > bound + r.total_uncertainty() + qp_err)
        throw std::logic_error("F_of_t: decay bound e^{-t^2} pi/4 violated beyond uncertainty");
    if (r.value < -r.total_uncertainty())
        throw std::logic_error("F_of_t: negative value beyond uncertainty");
    return r;
}

/// G(t) = gauss_truncated(t)^2 with uncertainty propagated through the
/// square: 2|g|e + e^2.
inline QuadResult G_of_t(const Real& t, const Real& tol,
                         std::uint64_t max_evals = default_max_evals()) {
    detail::check_t(t, "G_of_t");
    QuadResult g = gauss_truncated(t, tol, max_evals);
    QuadResult out;
    Real e = g.total_uncertainty();
    out.value = g.value * g.value;
    out.discretization_error = 2 * abs(g.value) * e + e * e;
    out.tail_bound = 0;
    out.evaluations = g.evaluations;
    out.tolerance_met = g.tolerance_met;
    return out;
}

struct ConservationReport {
    Real t{};
    QuadResult F;
    QuadResult G;
    Real sum_deviation{};         // |F + G - pi/4|
    std::string pi_quarter_ref;   // decimal of pi/4 from the Machin enclosure
    Real allowed_deviation{};     // combined uncertainties + enclosure width
    bool within_tolerance = false;
    bool decay_bound_ok = false;  // F <= e^{-t^2} pi/4 + uncertainty
};

inline ConservationReport check_conservation(const Real& t, const Real& tol,
                                             std::uint64_t max_evals = default_max_evals()) {
    detail::check_t(t, "check_conservation");
    ConservationReport rep;
    rep.t = t;
    rep.F = F_of_t(t, tol, max_evals);
    rep.G = G_of_t(t, tol, max_evals);
    auto [quarter_pi, qp_err] = detail::quarter_pi_ref(tol);
    rep.sum_deviation = abs(rep.F.value + rep.G.value - quarter_pi);
    rep.allowed_deviation =
        rep.F.total_uncertainty() + rep.G.total_uncertainty() + 2 * qp_err;
    rep.within_tolerance = rep.sum_deviation <= rep.allowed_deviation;
    rep.pi_quarter_ref = to_decimal_string(
        pi_enclosure(detail::digits_for_tol(tol)).interval.scaled(BigRational(1, 4)).midpoint(), 15);
    rep.decay_bound_ok =
        rep.F.value <= exp(-t * t) * quarter_pi + rep.F.total_uncertainty() + qp_err;
    return rep;
}

/// int_0^t e^{-x^2} dx = sqrt(pi/4 - F(t)). The uncertainty combines F's,
/// the enclosure width and the square-root conditioning; near t = 0 the
/// radicand vanishes and the sqrt(delta) bound takes over. A radicand
/// below -uncertainty signals inconsistent tolerances and is reported,
/// never clamped.
inline QuadResult probability_integral_via_F(const Real& t, const Real& tol,
                                             std::uint64_t max_evals = default_max_evals()) {
    detail::check_t(t, "probability_integral_via_F");
    QuadResult f = F_of_t(t, tol, max_evals);
    auto [quarter_pi, qp_err] = detail::quarter_pi_ref(tol);
    Real radicand = quarter_pi - f.value;
    Real input_unc = f.total_uncertainty() + qp_err;
    if (radicand < -input_unc)
        throw NegativeRadicand("probability_integral_via_F: pi/4 - F(t) = " + radicand.str(6) +
                               " below -uncertainty " + input_unc.str(6));
    QuadResult out;
    out.evaluations = f.evaluations;
    out.tolerance_met = f.tolerance_met;
    if (radicand <= 0) {
        out.value = 0;
        out.discretization_error = sqrt(input_unc);
        return out;
    }
    out.value = sqrt(radicand);
    Real linear = input_unc / (2 * out.value);
    Real robust = sqrt(input_unc);
    out.discretization_error = linear < robust ? linear : robust;
    return out;
}

/// The fixed 25-point grid for conservation checks: log-spaced in 1+t over
/// [0, 6], reproducible across runs.
inline std::vector<Real> conservation_grid() {
    std::vector<Real> grid;
    grid.reserve(25);
    Real log7 = log(Real(7));
    for (int i = 0; i < 25; ++i) grid.push_back(exp(log7 * i / 24) - 1);
    grid.front() = 0;
    grid.back() = 6;
    return grid;
}

}  // namespace wallislab
