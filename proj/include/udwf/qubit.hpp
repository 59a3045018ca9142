#pragma once

// Reduced density matrix of an accelerated qubit detector after a Gaussian-switched interaction,
// to second order in the coupling, and its l1-norm coherence.

#include <cmath>
#include <complex>
#include <numbers>

#include "udwf/errors.hpp"
#include "udwf/rates.hpp"
#include "udwf/special.hpp"

namespace udwf {

struct BlochState {
    double theta = std::numbers::pi / 2.0;
    double phi = 0.0;
};

struct QubitOutput {
    double rho_gg = 1.0;
    double rho_ee = 0.0;
    Complex rho_eg{};
    Complex rho_ge{};
    double coherence_l1 = 0.0;
    Regime regime = Regime::Massless;
    Validity validity{};
};

namespace detail {

inline void check_state(const BlochState& s) {
    if (!(s.theta >= 0.0 && s.theta <= std::numbers::pi)) throw DomainError("theta must lie in [0, pi]");
    if (!std::isfinite(s.phi)) throw DomainError("phi must be finite");
}

inline void check_perturbative(double sigma, double rm, double rp) {
    if (sigma * (std::abs(rm) + std::abs(rp)) >= 1.0) {
        throw PerturbativityError("sigma * lambda^2 * (R- + R+) >= 1: second order no longer applies");
    }
}

}  // namespace detail

inline double coherence_l1(const QubitOutput& out) { return std::abs(out.rho_eg) + std::abs(out.rho_ge); }

/// Long-interaction-time density matrix built from coupling-stripped rates.
/// Diagonals use F = sigma * Rbar with 2 Re G = F, which keeps the trace at one.
inline QubitOutput density_long_time(const BlochState& state, const DetectorParams& params, const RatePair& rates) {
    detail::check_state(state);
    detail::check_params(params, true);
    if (std::isinf(params.sigma)) throw DomainError("density_long_time needs a finite sigma");

    const ReportedRates r = report_rate(rates, params);
    detail::check_perturbative(params.sigma, r.r_minus, r.r_plus);

    const double c2 = std::cos(0.5 * state.theta) * std::cos(0.5 * state.theta);
    const double s2 = std::sin(0.5 * state.theta) * std::sin(0.5 * state.theta);
    const double fm = params.sigma * r.r_minus;
    const double fp = params.sigma * r.r_plus;
    const double damping = 1.0 - (fm * c2 + fp * s2);

    QubitOutput out;
    out.rho_gg = c2 + (s2 * fp - c2 * fm);
    out.rho_ee = s2 + (c2 * fm - s2 * fp);
    out.rho_eg = 0.5 * std::sin(state.theta) * std::polar(1.0, -state.phi) * damping;
    out.rho_ge = std::conj(out.rho_eg);
    out.coherence_l1 = coherence_l1(out);
    out.regime = rates.regime;
    out.validity = rates.validity;
    if (params.sigma < 5.0) out.validity |= Validity::ShortInteraction;
    return out;
}

namespace detail {

// |sin theta| [1 - sigma lambda^2 (bracket) (n cos^2 + (1+n) sin^2)]
inline double coherence_closed(const BlochState& state, const DetectorParams& p, double bracket) {
    check_state(state);
    check_params(p, true);
    if (std::isinf(p.sigma)) throw DomainError("coherence needs a finite sigma");
    const double n = planck(p.abar);
    const double c2 = std::cos(0.5 * state.theta) * std::cos(0.5 * state.theta);
    const double s2 = 1.0 - c2;
    const double lam2 = p.lambda_bar * p.lambda_bar;
    check_perturbative(p.sigma, lam2 * bracket * n, lam2 * bracket * (1.0 + n));
    return std::abs(std::sin(state.theta)) * (1.0 - p.sigma * lam2 * bracket * (n * c2 + (1.0 + n) * s2));
}

}  // namespace detail

inline double coherence_massless(const BlochState& state, const DetectorParams& p) {
    const double a2 = p.abar * p.abar;
    const double pi3 = std::pow(std::numbers::pi, 3);
    return detail::coherence_closed(state, p, (1.0 + 5.0 * a2 + 4.0 * a2 * a2) / (60.0 * pi3));
}

inline double coherence_small_mass(const BlochState& state, const DetectorParams& p) {
    const double a2 = p.abar * p.abar;
    const double pi3 = std::pow(std::numbers::pi, 3);
    const double poly = (1.0 + 5.0 * a2 + 4.0 * a2 * a2) - 5.0 * p.mbar * p.mbar * (1.0 + a2);
    return detail::coherence_closed(state, p, poly / (60.0 * pi3));
}

inline double coherence_large_mass(const BlochState& state, const DetectorParams& p) {
    if (!(p.mbar > 0.0)) throw DomainError("large-mass coherence needs mbar > 0");
    const double m = p.mbar;
    const double bracket = m * m * (1.0 + p.abar * p.abar - 12.0 * m + 48.0 * m * m - 64.0 * m * m * m) /
                           (8.0 * std::numbers::pi * std::numbers::pi);
    return detail::coherence_closed(state, p, bracket);
}

/// Same construction with the massless scalar reference rates and lambda_phi = lambda_bar.
inline double coherence_scalar_reference(const BlochState& state, const DetectorParams& p) {
    return detail::coherence_closed(state, p, 1.0 / (2.0 * std::numbers::pi));
}

/// Coherence through the density-matrix path for any regime and horizon.
inline QubitOutput qubit_state(Regime regime, Horizon horizon, const BlochState& state, const DetectorParams& p) {
    return density_long_time(state, p, rate(regime, horizon, p));
}

/// Second-order integrals entering the full density matrix (coupling stripped).
struct SecondOrderIntegrals {
    double f_plus = 0.0;
    double f_minus = 0.0;
    Complex g_plus{};
    Complex g_minus{};
    Complex b_plus{};
    Complex b_minus{};
};

/// Full O(lambda^2) density matrix from numerically evaluated F, G and B integrals.
/// lambda is the dimensionful coupling multiplying the integrals.
inline QubitOutput density_full_second_order(const BlochState& state, double lambda, const SecondOrderIntegrals& in) {
    detail::check_state(state);
    const double c2 = std::cos(0.5 * state.theta) * std::cos(0.5 * state.theta);
    const double s2 = std::sin(0.5 * state.theta) * std::sin(0.5 * state.theta);
    const double l2 = lambda * lambda;
    const Complex em = std::polar(1.0, -state.phi);
    const Complex ep = std::polar(1.0, state.phi);
    const double st = std::sin(state.theta);

    QubitOutput out;
    out.rho_gg = c2 + l2 * (s2 * in.f_plus - 2.0 * c2 * in.g_minus.real());
    out.rho_ee = s2 + l2 * (c2 * in.f_minus - 2.0 * s2 * in.g_plus.real());
    out.rho_eg = st * (0.5 * em + 0.5 * l2 * (ep * in.b_plus - em * (in.g_plus + std::conj(in.g_minus))));
    out.rho_ge = st * (0.5 * ep + 0.5 * l2 * (em * in.b_minus - ep * (in.g_minus + std::conj(in.g_plus))));
    out.coherence_l1 = coherence_l1(out);
    return out;
}

}  // namespace udwf
