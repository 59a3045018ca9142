#pragma once

// Vacuum two-point functions of scalar and fermionic (bilinear) fields, in Minkowski
// coordinates and along the uniformly accelerated worldline.
//
// Conventions
//   rho = (dt - i eps)^2 - dx^2 and sqrt(-rho) is the principal root; the regulator keeps
//   its real part strictly positive.
//   On the worldline u = a (dtau - i eps) / 2, so RindlerPoint::epsilon is a proper-time
//   regulator. At the symmetric points tau = +-dtau/2 one has dx = 0 and
//   dt^2 - dx^2 = (4/a^2) sinh^2(a dtau / 2).
//   Series forms sum poles of w_k = a (dtau - i eps) - 2 pi i k.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "udwf/errors.hpp"
#include "udwf/special.hpp"

namespace udwf {

struct SpacetimeInterval {
    double dt = 0.0;
    double dx = 0.0;
    double epsilon = 1e-6;
};

struct RindlerPoint {
    double a = 1.0;
    double dtau = 0.0;
    double epsilon = 2e-6;
};

struct FourVector {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Default proper-time regulator for worldline evaluations.
inline double default_epsilon(double a) { return 1e-6 * (2.0 / a); }

inline RindlerPoint make_rindler_point(double a, double dtau) { return {a, dtau, default_epsilon(a)}; }

namespace detail {

inline constexpr double pi = std::numbers::pi;

inline void check_interval(const SpacetimeInterval& s) {
    if (!(s.epsilon > 0.0)) throw DomainError("interval: epsilon must be > 0");
    if (!(s.dx >= 0.0)) throw DomainError("interval: dx must be >= 0");
    if (!std::isfinite(s.dt) || !std::isfinite(s.dx)) throw DomainError("interval: non-finite separation");
}

inline void check_point(const RindlerPoint& p) {
    if (!(p.a > 0.0)) throw DomainError("rindler point: a must be > 0");
    if (!(p.epsilon > 0.0)) throw DomainError("rindler point: epsilon must be > 0");
    if (!std::isfinite(p.dtau)) throw DomainError("rindler point: non-finite dtau");
}

inline void check_mass(double m, bool allow_zero) {
    if (!std::isfinite(m) || m < 0.0 || (!allow_zero && m == 0.0)) {
        throw DomainError(allow_zero ? "mass must be >= 0" : "mass must be > 0");
    }
}

inline Complex rho(const SpacetimeInterval& s) {
    const Complex t(s.dt, -s.epsilon);
    return t * t - s.dx * s.dx;
}

inline Complex rindler_u(const RindlerPoint& p) { return Complex(0.5 * p.a * p.dtau, -0.5 * p.a * p.epsilon); }

// 1/sinh(u) without overflow for large |Re u|.
inline Complex inv_sinh(Complex u) {
    if (u.real() > 20.0) {
        const Complex e = std::exp(-u);
        return 2.0 * e / (1.0 - e * e);
    }
    if (u.real() < -20.0) {
        const Complex e = std::exp(u);
        return -2.0 * e / (1.0 - e * e);
    }
    return 1.0 / std::sinh(u);
}

inline Complex ipow(Complex z, int n) {
    Complex r = 1.0;
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------------------
// Worldline

inline FourVector rindler_embed(double a, double tau) {
    if (!(a > 0.0)) throw DomainError("rindler_embed: a must be > 0");
    return {std::sinh(a * tau) / a, std::cosh(a * tau) / a, 0.0, 0.0};
}

/// Minkowski interval between the worldline events tau = +dtau/2 and tau = -dtau/2.
/// The proper-time regulator maps to eps_t = eps * cosh(a dtau / 2) to first order.
inline SpacetimeInterval trajectory_interval(const RindlerPoint& p) {
    detail::check_point(p);
    const FourVector x1 = rindler_embed(p.a, 0.5 * p.dtau);
    const FourVector x2 = rindler_embed(p.a, -0.5 * p.dtau);
    const double dx = std::hypot(x1.x - x2.x, x1.y - x2.y, x1.z - x2.z);
    return {x1.t - x2.t, dx, p.epsilon * std::cosh(0.5 * p.a * p.dtau)};
}

// ---------------------------------------------------------------------------------------
// Minkowski forms

inline Complex scalar_massless(const SpacetimeInterval& s) {
    detail::check_interval(s);
    return -1.0 / (4.0 * detail::pi * detail::pi * detail::rho(s));
}

inline Complex scalar_massive(const SpacetimeInterval& s, double m) {
    detail::check_interval(s);
    detail::check_mass(m, false);
    const Complex r = std::sqrt(-detail::rho(s));
    return m / (4.0 * detail::pi * detail::pi) * special::bessel_k(1, m * r) / r;
}

inline Complex fermion_massless_minkowski(const SpacetimeInterval& s) {
    detail::check_interval(s);
    const Complex r = detail::rho(s);
    return -1.0 / (std::pow(detail::pi, 4) * r * r * r);
}

inline Complex fermion_massive_minkowski(const SpacetimeInterval& s, double m) {
    detail::check_interval(s);
    detail::check_mass(m, false);
    const Complex r = detail::rho(s);
    const special::KTriple k = special::bessel_k012(m * std::sqrt(-r));
    return std::pow(m, 4) / (4.0 * std::pow(detail::pi, 4) * r) * (k.k1 * k.k1 - k.k2 * k.k2);
}

// ---------------------------------------------------------------------------------------
// Worldline closed forms

inline Complex scalar_massless_rindler(const RindlerPoint& p) {
    detail::check_point(p);
    const Complex s = detail::inv_sinh(detail::rindler_u(p));
    return -(p.a * p.a) / (16.0 * detail::pi * detail::pi) * s * s;
}

inline Complex fermion_massless_rindler(const RindlerPoint& p) {
    detail::check_point(p);
    const Complex s = detail::inv_sinh(detail::rindler_u(p));
    return -std::pow(p.a, 6) / (64.0 * std::pow(detail::pi, 4)) * detail::ipow(s, 6);
}

inline Complex fermion_massive_rindler(const RindlerPoint& p, double m) {
    detail::check_point(p);
    detail::check_mass(m, false);
    const Complex u = detail::rindler_u(p);
    const Complex s = detail::inv_sinh(u);
    const Complex z = Complex(0.0, 2.0 * m / p.a) * std::sinh(u);
    const special::KTriple k = special::bessel_k012(z);
    return std::pow(m, 4) * p.a * p.a / (16.0 * std::pow(detail::pi, 4)) * s * s * (k.k1 * k.k1 - k.k2 * k.k2);
}

inline Complex wightman_small_mass(const RindlerPoint& p, double m) {
    detail::check_point(p);
    detail::check_mass(m, true);
    const Complex s = detail::inv_sinh(detail::rindler_u(p));
    const Complex s4 = detail::ipow(s, 4);
    const double c = 64.0 * std::pow(detail::pi, 4);
    return -std::pow(p.a, 6) / c * s4 * s * s - m * m * std::pow(p.a, 4) / c * s4;
}

inline Complex wightman_large_mass(const RindlerPoint& p, double m) {
    detail::check_point(p);
    detail::check_mass(m, false);
    const Complex u = detail::rindler_u(p);
    const Complex s = detail::inv_sinh(u);
    const Complex phase = std::exp(Complex(0.0, -4.0 * m / p.a) * std::sinh(u));
    return 3.0 * m * m * std::pow(p.a, 4) / (128.0 * std::pow(detail::pi, 3)) * phase * detail::ipow(s, 4);
}

// ---------------------------------------------------------------------------------------
// Pole series

inline constexpr std::int64_t default_kmax = 1000;
inline constexpr std::int64_t kmax_cap = 1000000;
inline constexpr double default_series_tol = 1e-8;

/// Raw window sum of (w0 - 2 pi i k)^(-n) over k in [kmin, kmax].
inline Complex pole_window_sum(Complex w0, int n, std::int64_t kmin, std::int64_t kmax) {
    Complex acc = 0.0;
    for (std::int64_t k = kmax; k >= kmin; --k) {
        acc += 1.0 / detail::ipow(w0 - Complex(0.0, 2.0 * detail::pi * static_cast<double>(k)), n);
    }
    return acc;
}

struct PoleSum {
    Complex value;
    double tail_bound;
};

namespace detail {

// sum_{k > K} k^(-p) by Euler-Maclaurin.
inline double zeta_tail(int p, double K) {
    return std::pow(K, 1.0 - p) / (p - 1.0) - 0.5 * std::pow(K, -p) + p / 12.0 * std::pow(K, -p - 1.0) -
           p * (p + 1.0) * (p + 2.0) / 720.0 * std::pow(K, -p - 3.0);
}

inline double zeta_tail_error(int p, double K) {
    return p * (p + 1.0) * (p + 2.0) * (p + 3.0) * (p + 4.0) / 30240.0 * std::pow(K, -p - 5.0);
}

inline double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}

}  // namespace detail

/// sum_{k in Z} (w0 - 2 pi i k)^(-n), n even >= 2: the window [-K, K] summed in (k, -k) pairs
/// plus the first two orders of the analytic tail in w0 / (2 pi k).
inline PoleSum pole_sum(Complex w0, int n, std::int64_t kmax) {
    if (n < 2 || n % 2 != 0) throw DomainError("pole_sum: order must be even and >= 2");
    if (kmax < 1 || kmax > kmax_cap) throw DomainError("pole_sum: kmax must lie in [1, 1e6]");
    const double K = static_cast<double>(kmax);
    const double two_pi = 2.0 * detail::pi;
    const double wabs = std::abs(w0);
    if (wabs >= detail::pi * K) {
        throw ConvergenceError("pole_sum: kmax too small for |w| (need |w| < pi kmax)");
    }

    Complex acc = 0.0;
    for (std::int64_t k = kmax; k >= 1; --k) {
        const Complex c(0.0, two_pi * static_cast<double>(k));
        acc += 1.0 / detail::ipow(w0 - c, n) + 1.0 / detail::ipow(w0 + c, n);
    }
    acc += 1.0 / detail::ipow(w0, n);

    const double sgn = (n / 2) % 2 == 0 ? 1.0 : -1.0;
    acc += 2.0 * sgn / std::pow(two_pi, n) * detail::zeta_tail(n, K);
    acc += -sgn * n * (n + 1.0) * w0 * w0 / std::pow(two_pi, n + 2) * detail::zeta_tail(n + 2, K);

    const double ratio = wabs / (two_pi * K);
    const double next = 2.0 * detail::binom(n + 3, 4) * std::pow(wabs, 4) / std::pow(two_pi, n + 4) *
                        std::pow(K, -(n + 3)) / (n + 3.0) / (1.0 - ratio * ratio);
    const double em = 2.0 / std::pow(two_pi, n) * detail::zeta_tail_error(n, K) +
                      n * (n + 1.0) * wabs * wabs / std::pow(two_pi, n + 2) * detail::zeta_tail_error(n + 2, K);
    return {acc, next + em};
}

struct SeriesTerm {
    int order;
    Complex coeff;
};

namespace detail {

inline Complex series_sum(Complex prefactor, Complex w0, const std::vector<SeriesTerm>& terms,
                          std::int64_t kmax, double tol) {
    Complex value = 0.0;
    double bound = 0.0;
    for (const SeriesTerm& t : terms) {
        const PoleSum s = pole_sum(w0, t.order, kmax);
        value += t.coeff * s.value;
        bound += std::abs(t.coeff) * s.tail_bound;
    }
    value *= prefactor;
    bound *= std::abs(prefactor);
    if (bound > tol * std::abs(value)) {
        throw ConvergenceError("pole series: tail estimate exceeds tolerance; raise kmax");
    }
    return value;
}

inline Complex rindler_w(const RindlerPoint& p) { return Complex(p.a * p.dtau, -p.a * p.epsilon); }

}  // namespace detail

inline Complex fermion_massless_series(const RindlerPoint& p, std::int64_t kmax = default_kmax,
                                       double tol = default_series_tol) {
    detail::check_point(p);
    const std::vector<SeriesTerm> terms{{6, 1.0}, {4, -0.25}, {2, 1.0 / 30.0}};
    return detail::series_sum(-std::pow(p.a, 6) / std::pow(detail::pi, 4), detail::rindler_w(p), terms, kmax, tol);
}

inline Complex wightman_small_mass_series(const RindlerPoint& p, double m, std::int64_t kmax = default_kmax,
                                          double tol = default_series_tol) {
    detail::check_point(p);
    detail::check_mass(m, true);
    const double r = m * m / (p.a * p.a);
    const std::vector<SeriesTerm> terms{
        {6, 1.0}, {4, -0.25 * (1.0 - r)}, {2, (1.0 - 1.25 * r) / 30.0}};
    return detail::series_sum(-std::pow(p.a, 6) / std::pow(detail::pi, 4), detail::rindler_w(p), terms, kmax, tol);
}

inline Complex wightman_large_mass_series(const RindlerPoint& p, double m, std::int64_t kmax = default_kmax,
                                          double tol = default_series_tol) {
    detail::check_point(p);
    detail::check_mass(m, false);
    const Complex phase = std::exp(Complex(0.0, -4.0 * m / p.a) * std::sinh(detail::rindler_u(p)));
    const std::vector<SeriesTerm> terms{{4, 1.0}, {2, -1.0 / 6.0}};
    const Complex pre = 3.0 * m * m * std::pow(p.a, 4) / (8.0 * std::pow(detail::pi, 3)) * phase;
    return detail::series_sum(pre, detail::rindler_w(p), terms, kmax, tol);
}

}  // namespace udwf
