#pragma once

// Closed-form transition rates of an accelerated Unruh-DeWitt detector coupled to a fermionic
// bilinear (and to a massless scalar for reference).
//
// Rates are coupling-stripped: R- (excitation) and R+ (de-excitation) in units of Omega^5 for the
// fermion and Omega for the scalar. report_rate attaches the coupling and the 1/Omega reporting
// normalisation. With n = 1/(e^{2 pi/abar} - 1) the identities e/(e-1) = 1+n and
// (e+1)/(e-1) = 1+2n keep every form finite as abar -> 0.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "udwf/errors.hpp"

namespace udwf {

enum class Regime { Massless, SmallMass, LargeMass, ScalarReference };
enum class Horizon { InfiniteTime, FiniteTime };

inline std::string to_string(Regime r) {
    switch (r) {
        case Regime::Massless: return "massless";
        case Regime::SmallMass: return "small-mass";
        case Regime::LargeMass: return "large-mass";
        case Regime::ScalarReference: return "scalar";
    }
    return "unknown";
}

inline Regime parse_regime(const std::string& s) {
    if (s == "massless") return Regime::Massless;
    if (s == "small-mass") return Regime::SmallMass;
    if (s == "large-mass") return Regime::LargeMass;
    if (s == "scalar") return Regime::ScalarReference;
    throw DomainError("unknown regime '" + s + "'");
}

/// Set of warnings attached to a rate or coherence value. Empty means "ok".
class Validity {
public:
    enum Flag : std::uint8_t {
        SmallMassOutside = 1u << 0,     // m/a > 0.5 with the small-mass expansion
        LargeMassOutside = 1u << 1,     // m/a < 5 with the large-mass expansion
        TruncatedAsymptotic = 1u << 2,  // large-mass bracket or rate negative
        ShortInteraction = 1u << 3,     // sigma < 5
    };

    constexpr Validity() = default;
    constexpr explicit Validity(std::uint8_t bits) : bits_(bits) {}

    constexpr bool ok() const { return bits_ == 0; }
    constexpr bool has(Flag f) const { return (bits_ & f) != 0; }
    constexpr std::uint8_t bits() const { return bits_; }
    constexpr Validity& operator|=(Validity o) {
        bits_ |= o.bits_;
        return *this;
    }
    constexpr Validity& operator|=(Flag f) {
        bits_ |= f;
        return *this;
    }
    friend constexpr Validity operator|(Validity a, Validity b) { return a |= b; }
    friend constexpr bool operator==(Validity, Validity) = default;

    /// "ok" or the flag names joined by '|'.
    std::string str() const {
        if (ok()) return "ok";
        std::string s;
        auto add = [&](Flag f, const char* name) {
            if (!has(f)) return;
            if (!s.empty()) s += '|';
            s += name;
        };
        add(SmallMassOutside, "small_mass_outside");
        add(LargeMassOutside, "large_mass_outside");
        add(TruncatedAsymptotic, "truncated_asymptotic");
        add(ShortInteraction, "short_interaction");
        return s;
    }

private:
    std::uint8_t bits_ = 0;
};

struct DetectorParams {
    double omega = 1.0;
    double abar = 1.0;
    double mbar = 0.0;
    double sigma = std::numeric_limits<double>::infinity();
    double lambda_bar = 1.0;
};

struct RatePair {
    double r_minus = 0.0;
    double r_plus = 0.0;
    Regime regime = Regime::Massless;
    Horizon horizon = Horizon::InfiniteTime;
    Validity validity{};
};

namespace detail {

inline constexpr double pi_r = std::numbers::pi;

inline void check_params(const DetectorParams& p, bool need_sigma) {
    if (!(p.omega > 0.0) || !std::isfinite(p.omega)) throw DomainError("omega must be > 0");
    if (!(p.abar > 0.0) || !std::isfinite(p.abar)) throw DomainError("abar must be > 0");
    if (!(p.mbar >= 0.0) || !std::isfinite(p.mbar)) throw DomainError("mbar must be >= 0");
    if (!(p.lambda_bar >= 0.0)) throw DomainError("lambda_bar must be >= 0");
    if (need_sigma && !(p.sigma > 0.0)) throw DomainError("sigma must be > 0");
}

// Planck occupation 1/(e^{2 pi/abar} - 1).
inline double planck(double abar) { return 1.0 / std::expm1(2.0 * pi_r / abar); }

inline double inv_sigma2(double sigma) { return std::isinf(sigma) ? 0.0 : 1.0 / (sigma * sigma); }

// Finite-time bracket of the massless rate. inf -> the infinite-time polynomial.
inline double massless_bracket(double a, double s2, double n) {
    const double a2 = a * a;
    const double P = 1.0 + 5.0 * a2 + 4.0 * a2 * a2;
    const double Q = 1.0 + 3.0 * a2 + 0.8 * a2 * a2;
    return P + s2 * (10.0 * (1.0 + 1.5 * a2) - 10.0 * pi_r / a * (1.0 + n) * Q +
                     2.0 * pi_r * pi_r / a2 * (1.0 + n) * (1.0 + 2.0 * n) * P);
}

inline double small_mass_correction(double a, double s2, double n) {
    const double a2 = a * a;
    return (1.0 + a2) + s2 * (3.0 - 2.0 * pi_r / a * (3.0 + a2) * (1.0 + n) +
                              2.0 * pi_r * pi_r / a2 * (1.0 + n) * (1.0 + 2.0 * n) * (1.0 + a2));
}

inline double large_mass_B(double a, double m) { return 1.0 + a * a - 12.0 * m + 48.0 * m * m - 64.0 * m * m * m; }

inline double large_mass_bracket(double a, double m, double s2, double n) {
    const double a2 = a * a;
    const double B = large_mass_B(a, m);
    const double C = 3.0 + a2 - 24.0 * m + 48.0 * m * m;
    return B + s2 * (3.0 * (1.0 - 4.0 * m) - 2.0 * pi_r / a * C * (1.0 + n) +
                     2.0 * pi_r * pi_r / a2 * (1.0 + n) * (1.0 + 2.0 * n) * B);
}

inline RatePair make_pair(double scale_n, double scale_1pn, Regime r, Horizon h) {
    return {scale_n, scale_1pn, r, h, {}};
}

inline Validity sigma_validity(const DetectorParams& p, Horizon h) {
    Validity v;
    if (h == Horizon::FiniteTime && p.sigma < 5.0) v |= Validity::ShortInteraction;
    return v;
}

inline Validity small_mass_validity(const DetectorParams& p) {
    Validity v;
    if (p.mbar / p.abar > 0.5) v |= Validity::SmallMassOutside;
    return v;
}

inline Validity large_mass_validity(const DetectorParams& p, const RatePair& r) {
    Validity v;
    if (p.mbar / p.abar < 5.0) v |= Validity::LargeMassOutside;
    if (large_mass_B(p.abar, p.mbar) < 0.0 || r.r_minus < 0.0) v |= Validity::TruncatedAsymptotic;
    return v;
}

inline RatePair massless(const DetectorParams& p, Horizon h) {
    const double n = planck(p.abar);
    const double s2 = h == Horizon::FiniteTime ? inv_sigma2(p.sigma) : 0.0;
    const double base = std::pow(p.omega, 5) / (60.0 * pi_r * pi_r * pi_r) * massless_bracket(p.abar, s2, n);
    RatePair r = make_pair(base * n, base * (1.0 + n), Regime::Massless, h);
    r.validity = sigma_validity(p, h);
    return r;
}

inline RatePair small_mass(const DetectorParams& p, Horizon h) {
    const double n = planck(p.abar);
    const double s2 = h == Horizon::FiniteTime ? inv_sigma2(p.sigma) : 0.0;
    const double pi3 = pi_r * pi_r * pi_r;
    const double base = std::pow(p.omega, 5) * (massless_bracket(p.abar, s2, n) / (60.0 * pi3) -
                                                 p.mbar * p.mbar / (12.0 * pi3) * small_mass_correction(p.abar, s2, n));
    RatePair r = make_pair(base * n, base * (1.0 + n), Regime::SmallMass, h);
    r.validity = sigma_validity(p, h) | small_mass_validity(p);
    return r;
}

inline RatePair large_mass(const DetectorParams& p, Horizon h) {
    if (!(p.mbar > 0.0)) throw DomainError("large-mass rates need mbar > 0");
    const double n = planck(p.abar);
    const double s2 = h == Horizon::FiniteTime ? inv_sigma2(p.sigma) : 0.0;
    const double base = p.mbar * p.mbar * std::pow(p.omega, 5) / (8.0 * pi_r * pi_r) *
                        large_mass_bracket(p.abar, p.mbar, s2, n);
    RatePair r = make_pair(base * n, base * (1.0 + n), Regime::LargeMass, h);
    r.validity = sigma_validity(p, h) | large_mass_validity(p, r);
    return r;
}

}  // namespace detail

inline RatePair rate_massless_inf(const DetectorParams& p) {
    detail::check_params(p, false);
    return detail::massless(p, Horizon::InfiniteTime);
}

inline RatePair rate_massless_finite(const DetectorParams& p) {
    detail::check_params(p, true);
    return detail::massless(p, Horizon::FiniteTime);
}

inline RatePair rate_small_mass_inf(const DetectorParams& p) {
    detail::check_params(p, false);
    return detail::small_mass(p, Horizon::InfiniteTime);
}

inline RatePair rate_small_mass_finite(const DetectorParams& p) {
    detail::check_params(p, true);
    return detail::small_mass(p, Horizon::FiniteTime);
}

inline RatePair rate_large_mass_inf(const DetectorParams& p) {
    detail::check_params(p, false);
    return detail::large_mass(p, Horizon::InfiniteTime);
}

inline RatePair rate_large_mass_finite(const DetectorParams& p) {
    detail::check_params(p, true);
    return detail::large_mass(p, Horizon::FiniteTime);
}

/// Massless scalar reference: R- = (Omega/2pi) n, R+ = (Omega/2pi)(1+n).
inline RatePair rate_scalar_reference(const DetectorParams& p) {
    detail::check_params(p, false);
    const double n = detail::planck(p.abar);
    const double base = p.omega / (2.0 * detail::pi_r);
    return {base * n, base * (1.0 + n), Regime::ScalarReference, Horizon::InfiniteTime, {}};
}

using RateFunction = std::function<RatePair(const DetectorParams&)>;

/// Closed-form rate for a regime and horizon. The scalar reference has no finite-time form.
inline RatePair rate(Regime regime, Horizon horizon, const DetectorParams& p) {
    const bool fin = horizon == Horizon::FiniteTime;
    switch (regime) {
        case Regime::Massless: return fin ? rate_massless_finite(p) : rate_massless_inf(p);
        case Regime::SmallMass: return fin ? rate_small_mass_finite(p) : rate_small_mass_inf(p);
        case Regime::LargeMass: return fin ? rate_large_mass_finite(p) : rate_large_mass_inf(p);
        case Regime::ScalarReference:
            if (fin) throw DomainError("the scalar reference rate has no finite-time form");
            return rate_scalar_reference(p);
    }
    throw DomainError("unknown regime");
}

/// Rate as a function of the gap Omega at fixed a = abar*Omega0, m = mbar*Omega0.
inline std::pair<double, double> rate_at_omega(const RateFunction& fn, const DetectorParams& p, double omega) {
    DetectorParams q = p;
    q.omega = omega;
    q.abar = p.abar * p.omega / omega;
    q.mbar = p.mbar * p.omega / omega;
    const RatePair r = fn(q);
    return {r.r_minus, r.r_plus};
}

/// R(inf) + (1/2T^2) d^2R(inf)/dOmega^2 with T = sigma/Omega. Central differences with
/// step h = 1e-3 Omega and one Richardson level.
inline RatePair finite_time_correct(const RateFunction& rate_inf_fn, const DetectorParams& p) {
    detail::check_params(p, true);
    const double w = p.omega;
    const auto r0 = rate_at_omega(rate_inf_fn, p, w);
    auto d2 = [&](double h) {
        const auto up = rate_at_omega(rate_inf_fn, p, w + h);
        const auto dn = rate_at_omega(rate_inf_fn, p, w - h);
        return std::pair{(up.first - 2.0 * r0.first + dn.first) / (h * h),
                         (up.second - 2.0 * r0.second + dn.second) / (h * h)};
    };
    const double h = 1e-3 * w;
    const auto coarse = d2(h);
    const auto fine = d2(0.5 * h);
    const double dm = (4.0 * fine.first - coarse.first) / 3.0;
    const double dp = (4.0 * fine.second - coarse.second) / 3.0;

    auto disagree = [](double a, double b, double scale) {
        return std::abs(a - b) > 1e-3 * std::abs(b) + 1e-9 * scale;
    };
    const double scale = std::abs(r0.first) + std::abs(r0.second);
    if (disagree(coarse.first, fine.first, scale) || disagree(coarse.second, fine.second, scale)) {
        throw AccuracyError("finite_time_correct: Richardson levels disagree");
    }

    const double T = p.sigma / w;
    RatePair out = rate_inf_fn(p);
    const double c = std::isinf(T) ? 0.0 : 1.0 / (2.0 * T * T);
    out.r_minus = r0.first + c * dm;
    out.r_plus = r0.second + c * dp;
    out.horizon = Horizon::FiniteTime;
    out.validity |= detail::sigma_validity(p, Horizon::FiniteTime);
    return out;
}

struct ReportedRates {
    double r_minus;
    double r_plus;
};

/// Dimensionless reported rates: lambda^2 R / Omega with lambda = lambda_bar / Omega^2 for the
/// fermion and lambda = lambda_bar for the scalar.
inline ReportedRates report_rate(const RatePair& pair, const DetectorParams& p) {
    const double w = p.omega;
    const double scale = pair.regime == Regime::ScalarReference
                             ? p.lambda_bar * p.lambda_bar / w
                             : p.lambda_bar * p.lambda_bar / std::pow(w, 5);
    return {scale * pair.r_minus, scale * pair.r_plus};
}

}  // namespace udwf
