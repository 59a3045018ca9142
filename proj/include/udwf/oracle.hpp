#pragma once

// Brute-force cross-checks for the closed forms: Gaussian-switched response integrals, the
// termwise residue transform of the pole series, the momentum-space mode sum of the massive
// scalar, gradient reconstruction of the fermionic bilinear, the half-domain G and B integrals,
// and stencil second derivatives.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include "udwf/errors.hpp"
#include "udwf/qubit.hpp"
#include "udwf/rates.hpp"
#include "udwf/special.hpp"
#include "udwf/wightman.hpp"

namespace udwf {

/// Excitation (Minus, e^{-i Omega dtau}) or de-excitation (Plus, e^{+i Omega dtau}).
enum class Sign { Minus, Plus };

struct QuadratureSpec {
    double rel_tol = 1e-11;
    double abs_tol = 0.0;
    int max_subdivisions = 15;
    double domain_halfwidth_in_T = 6.0;
};

struct OracleValue {
    double value = 0.0;
    double imag = 0.0;          // should vanish; kept as a diagnostic
    double error = 0.0;         // quadrature error estimate
    double eps_residual = 0.0;  // |value(eps/2) - value(eps)|
};

struct OracleReport {
    std::string quantity_name;
    Complex closed_form{};
    Complex oracle_value{};
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    double budget = 0.0;
    double abs_floor = 0.0;
    bool pass = false;
    std::string note;
};

inline OracleReport make_report(std::string name, Complex closed, Complex oracle, double budget, double abs_floor = 0.0) {
    OracleReport r;
    r.quantity_name = std::move(name);
    r.closed_form = closed;
    r.oracle_value = oracle;
    r.abs_diff = std::abs(closed - oracle);
    const double scale = std::abs(oracle);
    r.rel_diff = scale > 0.0 ? r.abs_diff / scale : (r.abs_diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    r.budget = budget;
    r.abs_floor = abs_floor;
    r.pass = r.rel_diff <= budget || r.abs_diff <= abs_floor;
    return r;
}

/// Report for a check that is a plain predicate on one measured number.
inline OracleReport make_check(std::string name, bool pass, double measured, double target, std::string note = {}) {
    OracleReport r;
    r.quantity_name = std::move(name);
    r.closed_form = measured;
    r.oracle_value = target;
    r.abs_diff = std::abs(measured - target);
    r.rel_diff = target != 0.0 ? r.abs_diff / std::abs(target) : r.abs_diff;
    r.budget = 0.0;
    r.pass = pass;
    r.note = std::move(note);
    return r;
}

/// Worldline two-point function W(dtau; eps), coupling stripped.
using WightmanFn = std::function<Complex(const RindlerPoint&)>;

namespace quad {

struct Result {
    Complex value{};
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod (61 points) over [a, b] cut into equal panels. The tolerance is
/// relative to the L1 norm of the whole interval, so negligible panels are not refined.
template <class F>
Result panels(F&& f, double a, double b, int n_panels, const QuadratureSpec& spec) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    struct Panel {
        double mid, half, l1, err;
        Complex value;
    };
    std::vector<Panel> ps(static_cast<std::size_t>(n_panels));
    const double w = (b - a) / n_panels;
    double total_l1 = 0.0;
    for (int i = 0; i < n_panels; ++i) {
        const double lo = a + w * i;
        const double hi = i + 1 == n_panels ? b : lo + w;
        // Map onto [-1, 1] so the error estimate and tolerance share one scale.
        Panel& pn = ps[static_cast<std::size_t>(i)];
        pn.mid = 0.5 * (lo + hi);
        pn.half = 0.5 * (hi - lo);
        auto g = [&](double t) { return f(pn.mid + pn.half * t) * pn.half; };
        pn.value = GK::integrate(g, -1.0, 1.0, 0u, spec.rel_tol, &pn.err, &pn.l1);
        total_l1 += pn.l1;
    }
    Result out;
    for (Panel& pn : ps) {
        const double target = spec.rel_tol * total_l1 / n_panels + spec.abs_tol;
        if (pn.err > target && pn.l1 > 0.0) {
            auto g = [&](double t) { return f(pn.mid + pn.half * t) * pn.half; };
            const double tol = std::max(spec.rel_tol, std::min(0.1, target / pn.l1));
            pn.value = GK::integrate(g, -1.0, 1.0, static_cast<unsigned>(spec.max_subdivisions), tol, &pn.err);
        }
        out.value += pn.value;
        out.error += pn.err;
    }
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag())) {
        throw ConvergenceError("quadrature produced a non-finite value");
    }
    return out;
}

/// Integral over [a, b] of a function peaked at a with width ~ scale: [a, a + scale/1000] directly,
/// the rest in the variable t = log(x - a).
template <class F>
Result graded(F&& f, double a, double b, double scale, const QuadratureSpec& spec) {
    const double x0 = 1e-3 * scale;
    Result out = panels(f, a, a + x0, 1, spec);
    auto g = [&](double t) {
        const double y = std::exp(t);
        return f(a + y) * y;
    };
    const double t0 = std::log(x0);
    const double t1 = std::log(b - a);
    const Result r = panels(g, t0, t1, std::max(1, static_cast<int>(std::ceil(t1 - t0))), spec);
    out.value += r.value;
    out.error += r.error;
    return out;
}

}  // namespace quad

namespace detail {

inline double sign_value(Sign s) { return s == Sign::Plus ? 1.0 : -1.0; }

inline void check_oracle_params(const DetectorParams& p) {
    check_params(p, true);
    if (std::isinf(p.sigma)) throw DomainError("oracle needs a finite sigma");
}

// Integral of e^{-u^2/4T^2} e^{s i Omega u} W(u) along Im u = -pi/a, u in [x0, x1].
// The strip 0 > Im u > -2pi/a + eps holds no singularity of W.
inline quad::Result shifted_line(const WightmanFn& w, const DetectorParams& p, double eps, double s_omega,
                                 double gauss_omega, double x0, double x1, int n_panels, const QuadratureSpec& spec) {
    const double a = p.abar * p.omega;
    const double T = p.sigma / p.omega;
    const double delta = std::numbers::pi / a;
    auto f = [&](double x) {
        const Complex u(x, -delta);
        const Complex weight = std::exp(-u * u / (4.0 * T * T) + Complex(0.0, s_omega) * u) * gauss_omega;
        return weight * w(RindlerPoint{a, x, eps + delta});
    };
    return quad::panels(f, x0, x1, n_panels, spec);
}

inline int panel_count(const DetectorParams& p, double length) {
    const double scale = std::max({p.omega, p.abar * p.omega, p.mbar * p.omega, 1.0 / (p.sigma / p.omega)});
    return std::clamp(static_cast<int>(std::ceil(length * scale / 2.0)), 8, 4000);
}

}  // namespace detail

// ---------------------------------------------------------------------------------------
// Gaussian-switched response

/// F^pm / (T sqrt(pi)) with T = sigma/Omega: the effective finite-time rate.
/// With u = tau - tau', v = tau + tau' the v integral is Gaussian and done exactly, leaving
/// int du e^{-u^2/4T^2} e^{+-i Omega u} W(u), evaluated on the shifted line Im u = -pi/a.
/// eps is the worldline regulator; the value is extrapolated from eps and eps/2.
inline OracleValue oracle_gaussian_response(const WightmanFn& w, const DetectorParams& p, Sign sign,
                                            const QuadratureSpec& spec = {}, double eps = -1.0) {
    detail::check_oracle_params(p);
    if (spec.domain_halfwidth_in_T < 4.0) throw DomainError("domain_halfwidth_in_T must be >= 4");
    const double a = p.abar * p.omega;
    if (eps <= 0.0) eps = default_epsilon(a);
    const double T = p.sigma / p.omega;
    const double L = 2.0 * spec.domain_halfwidth_in_T * T;
    const int n = detail::panel_count(p, 2.0 * L);
    const double s_omega = detail::sign_value(sign) * p.omega;

    const quad::Result r1 = detail::shifted_line(w, p, eps, s_omega, 1.0, -L, L, n, spec);
    const quad::Result r2 = detail::shifted_line(w, p, 0.5 * eps, s_omega, 1.0, -L, L, n, spec);
    OracleValue out;
    const Complex v = 2.0 * r2.value - r1.value;
    out.value = v.real();
    out.imag = v.imag();
    out.error = r1.error + r2.error;
    out.eps_residual = std::abs(r2.value - r1.value);
    return out;
}

// ---------------------------------------------------------------------------------------
// Residue transform of the pole series

namespace detail {

// Coefficients c_n of the pole series, W = pre * sum_n c_n sum_k w_k^{-n}.
inline std::vector<SeriesTerm> pole_terms(Regime regime, double a, double m, Complex& pre) {
    const double pi = std::numbers::pi;
    switch (regime) {
        case Regime::Massless:
            pre = -std::pow(a, 6) / std::pow(pi, 4);
            return {{6, 1.0}, {4, -0.25}, {2, 1.0 / 30.0}};
        case Regime::SmallMass: {
            pre = -std::pow(a, 6) / std::pow(pi, 4);
            const double r = m * m / (a * a);
            return {{6, 1.0}, {4, -0.25 * (1.0 - r)}, {2, (1.0 - 1.25 * r) / 30.0}};
        }
        case Regime::ScalarReference:
            pre = -(a * a) / (4.0 * pi * pi);
            return {{2, 1.0}};
        case Regime::LargeMass: break;
    }
    throw DomainError("residue transform: regime has no pure pole series");
}

inline double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace detail

/// Infinite-time rate from the exact one-pole transforms
///   int d(dtau) e^{-+ i Omega dtau} (a(dtau - i eps) - 2 pi i k)^{-n}
///     = 2 pi (-1)^{n/2} Omega^{n-1} / ((n-1)! a^n) * e^{+- Omega eps} q^{|k|},  q = e^{-2 pi Omega/a},
/// (poles k <= -1 for the excitation rate, k >= 0 for de-excitation) summed over k up to kmax
/// and extrapolated in eps.
inline OracleValue oracle_fourier_series(const DetectorParams& p, Sign sign, std::int64_t kmax = 2000,
                                         Regime regime = Regime::Massless, double eps = -1.0, double tol = 1e-14) {
    detail::check_params(p, false);
    if (kmax < 1) throw DomainError("kmax must be >= 1");
    const double a = p.abar * p.omega;
    const double m = p.mbar * p.omega;
    const double w = p.omega;
    if (eps <= 0.0) eps = default_epsilon(a);
    Complex pre;
    const std::vector<SeriesTerm> terms = detail::pole_terms(regime, a, m, pre);

    const double q = std::exp(-2.0 * std::numbers::pi * w / a);
    double geo = 0.0;
    double term = sign == Sign::Plus ? 1.0 : q;
    std::int64_t k = 0;
    for (; k < kmax && term > 0.0; ++k) {
        geo += term;
        term *= q;
    }
    const double tail = term / (1.0 - q);
    if (tail > tol * geo) throw ConvergenceError("residue transform: geometric tail above tolerance; raise kmax");

    auto at = [&](double e) {
        double s = 0.0;
        for (const SeriesTerm& t : terms) {
            const double sgn = (t.order / 2) % 2 == 0 ? 1.0 : -1.0;
            s += t.coeff.real() * 2.0 * std::numbers::pi * sgn * std::pow(w, t.order - 1) /
                 (detail::factorial(t.order - 1) * std::pow(a, t.order));
        }
        const double damp = sign == Sign::Plus ? std::exp(-w * e) : std::exp(w * e);
        return pre.real() * s * damp * geo;
    };
    const double r1 = at(eps);
    const double r2 = at(0.5 * eps);
    OracleValue out;
    out.value = 2.0 * r2 - r1;
    out.error = tail * std::abs(out.value) / std::max(geo, std::numeric_limits<double>::min());
    out.eps_residual = std::abs(r2 - r1);
    return out;
}

/// Direct 1-D quadrature of a single pole transform, used to validate the residue formula.
/// Breakpoints are graded geometrically around the pole; the oscillatory tails beyond |x| = L
/// are added by repeated integration by parts.
inline Complex pole_transform_numeric(double omega, double a, std::int64_t k, int n, double eps, Sign sign) {
    const double s = detail::sign_value(sign);
    const Complex c(0.0, a * eps + 2.0 * std::numbers::pi * static_cast<double>(k));
    auto f = [&](double x) { return std::exp(Complex(0.0, s * omega * x)) / detail::ipow(a * x - c, n); };

    const double xp = 2.0 * std::numbers::pi * static_cast<double>(k) / a;
    const double L = std::abs(xp) + 60.0 / std::min(omega, a);
    std::vector<double> cuts;
    for (double d = eps; d < L; d *= 2.0) {
        if (xp - d > -L) cuts.push_back(xp - d);
        if (xp + d < L) cuts.push_back(xp + d);
    }
    cuts.push_back(-L);
    cuts.push_back(L);
    cuts.push_back(xp);
    std::sort(cuts.begin(), cuts.end());

    QuadratureSpec spec;
    spec.rel_tol = 1e-13;
    Complex acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double len = cuts[i + 1] - cuts[i];
        const int n_panels = std::max(1, static_cast<int>(std::ceil(len * omega / 4.0)));
        acc += quad::panels(f, cuts[i], cuts[i + 1], n_panels, spec).value;
    }

    // int_L^inf e^{i b x} g(x) dx = -e^{i b L} sum_j g^{(j)}(L) / (-i b)^{j+1} ... with g = (a x - c)^{-n}.
    const double b = s * omega;
    auto tail = [&](double x0, double dir) {
        Complex sum = 0.0;
        Complex deriv = 1.0 / detail::ipow(a * x0 - c, n);
        Complex denom = Complex(0.0, b);
        for (int j = 0; j < 8; ++j) {
            sum += (j % 2 == 0 ? 1.0 : -1.0) * deriv / denom;
            deriv *= -static_cast<double>(n + j) * a / (a * x0 - c);
            denom *= Complex(0.0, b);
        }
        return -dir * std::exp(Complex(0.0, b * x0)) * sum;
    };
    acc += tail(L, 1.0) - tail(-L, 1.0);
    return acc;
}

// ---------------------------------------------------------------------------------------
// Momentum-space mode sum of the massive scalar

/// W = (1 / 4 pi^2 X) int_0^inf dk k sin(kX) e^{-i w (dt - i eps)} / w,  w = sqrt(k^2 + m^2).
/// The massless piece X / (X^2 - (dt - i eps)^2) is added analytically; the remainder is an
/// Ooura sine transform for dt = 0 and a damped panel quadrature otherwise.
inline Complex oracle_scalar_massive(const SpacetimeInterval& s, double m) {
    detail::check_interval(s);
    detail::check_mass(m, false);
    if (!(s.dx > 0.0)) throw DomainError("oracle_scalar_massive needs dx > 0");
    const double X = s.dx;
    const Complex tc(s.dt, -s.epsilon);
    const Complex massless = X / (X * X - tc * tc);
    Complex remainder;
    if (s.dt == 0.0) {
        auto f = [&](double k) {
            const double w = std::hypot(k, m);
            return k / w * std::exp(-w * s.epsilon) - std::exp(-k * s.epsilon);
        };
        boost::math::quadrature::ooura_fourier_sin<double> integrator(1e-12, 12);
        remainder = integrator.integrate(f, X).first;
    } else {
        if (s.epsilon < 1e-3 * (std::abs(s.dt) + X)) {
            throw DomainError("oracle_scalar_massive: dt != 0 needs epsilon >= 1e-3 (|dt| + dx)");
        }
        auto f = [&](double k) {
            const double w = std::hypot(k, m);
            return std::sin(k * X) * (k / w * std::exp(Complex(0.0, -w) * tc) - std::exp(Complex(0.0, -k) * tc));
        };
        const double kmax = 40.0 / s.epsilon;
        const double period = 2.0 * std::numbers::pi / (X + std::abs(s.dt));
        const int n = std::clamp(static_cast<int>(std::ceil(kmax / period)), 8, 200000);
        QuadratureSpec spec;
        spec.rel_tol = 1e-10;
        spec.max_subdivisions = 8;
        remainder = quad::panels(f, 0.0, kmax, n, spec).value;
    }
    return (massless + remainder) / (4.0 * std::numbers::pi * std::numbers::pi * X);
}

// ---------------------------------------------------------------------------------------
// Gradient reconstruction of the fermionic bilinear

using Gradient = std::array<Complex, 4>;

/// Scalar two-point function of the separation (dt, dx, dy, dz) with regulator eps.
inline Complex scalar_at(double dt, double dx, double dy, double dz, double eps, double m) {
    const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
    const SpacetimeInterval s{dt, r, eps};
    return m > 0.0 ? scalar_massive(s, m) : scalar_massless(s);
}

/// d W / d(Delta x^mu) by central differences with one Richardson level.
inline Gradient scalar_gradient_numeric(const SpacetimeInterval& s, double m) {
    detail::check_interval(s);
    const double h0 = 1e-3 * std::sqrt(std::abs(detail::rho(s)));
    std::array<double, 4> x{s.dt, s.dx, 0.0, 0.0};
    Gradient g{};
    for (int mu = 0; mu < 4; ++mu) {
        auto d = [&](double h) {
            auto xp = x;
            auto xm = x;
            xp[mu] += h;
            xm[mu] -= h;
            return (scalar_at(xp[0], xp[1], xp[2], xp[3], s.epsilon, m) -
                    scalar_at(xm[0], xm[1], xm[2], xm[3], s.epsilon, m)) / (2.0 * h);
        };
        const Complex coarse = d(h0);
        const Complex fine = d(0.5 * h0);
        const Complex value = (4.0 * fine - coarse) / 3.0;
        if (std::abs(coarse - fine) > 1e-4 * std::abs(value) + 1e-12 * std::abs(scalar_at(x[0], x[1], x[2], x[3], s.epsilon, m)) / h0) {
            throw AccuracyError("scalar_gradient_numeric: Richardson levels disagree");
        }
        g[mu] = value;
    }
    return g;
}

/// Closed-form gradient: d W / d(Delta x^mu) = (m^2 / 4 pi^2) K2(m s)/s^2 * (dt - i eps, -dx, 0, 0),
/// s = sqrt(-rho); the massless limit is (1 / 2 pi^2 rho^2) * (same vector).
inline Gradient scalar_gradient_analytic(const SpacetimeInterval& s, double m) {
    detail::check_interval(s);
    const Complex r = detail::rho(s);
    Complex c;
    if (m > 0.0) {
        const Complex sq = std::sqrt(-r);
        c = m * m / (4.0 * std::numbers::pi * std::numbers::pi) * special::bessel_k(2, m * sq) / (sq * sq);
    } else {
        c = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi * r * r);
    }
    return {c * Complex(s.dt, -s.epsilon), -c * s.dx, 0.0, 0.0};
}

/// W_Psi = -4 eta^{mu nu} dW dW - 4 m^2 W^2 with eta = diag(+,-,-,-); the primed derivative
/// acting on the second point supplies the overall sign.
inline Complex fermion_from_gradient(const Gradient& g, Complex w, double m) {
    const Complex contraction = g[0] * g[0] - g[1] * g[1] - g[2] * g[2] - g[3] * g[3];
    return -4.0 * contraction - 4.0 * m * m * w * w;
}

inline Complex oracle_fermion_from_gradients(const SpacetimeInterval& s, double m) {
    detail::check_mass(m, true);
    const Complex w = scalar_at(s.dt, s.dx, 0.0, 0.0, s.epsilon, m);
    return fermion_from_gradient(scalar_gradient_numeric(s, m), w, m);
}

inline Complex oracle_fermion_from_analytic_gradients(const SpacetimeInterval& s, double m) {
    detail::check_mass(m, true);
    const Complex w = scalar_at(s.dt, s.dx, 0.0, 0.0, s.epsilon, m);
    return fermion_from_gradient(scalar_gradient_analytic(s, m), w, m);
}

// ---------------------------------------------------------------------------------------
// F, G and B integrals

enum class BGKind { Bplus, Bminus, Gplus, Gminus, Fplus, Fminus };

struct BGValue {
    Complex value{};
    double error = 0.0;
    Complex eps_residual{};
};

/// Second-order integrals over the Gaussian switching (coupling stripped, true normalisation):
///   F = T sqrt(pi) int_R du g(u) e^{+-i Omega u} W(u)
///   G = T sqrt(pi) int_0^inf du g(u) e^{+-i Omega u} W(u)
///   B = T sqrt(pi) e^{-Omega^2 T^2} int_R du g(u) W(u),   g(u) = e^{-u^2/4T^2}.
/// G runs down 0 -> -i pi/a and then along Im u = -pi/a; the vertical leg is purely imaginary.
/// The state only enters through the density matrix, never through these integrals.
inline BGValue oracle_bg_integrals(const WightmanFn& w, const DetectorParams& p, BGKind which,
                                   const QuadratureSpec& spec = {}, double eps = -1.0) {
    detail::check_oracle_params(p);
    const double a = p.abar * p.omega;
    if (eps <= 0.0) eps = default_epsilon(a);
    const double T = p.sigma / p.omega;
    const double L = 2.0 * spec.domain_halfwidth_in_T * T;
    const double norm = T * std::sqrt(std::numbers::pi);
    const double delta = std::numbers::pi / a;

    const bool plus = which == BGKind::Bplus || which == BGKind::Gplus || which == BGKind::Fplus;
    const double s_omega = plus ? p.omega : -p.omega;

    auto compute = [&](double e) -> quad::Result {
        switch (which) {
            case BGKind::Bplus:
            case BGKind::Bminus: {
                const double n = detail::panel_count(p, 2.0 * L);
                quad::Result r = detail::shifted_line(w, p, e, 0.0, 1.0, -L, L, static_cast<int>(n), spec);
                const double f = norm * std::exp(-p.omega * p.omega * T * T);
                return {r.value * f, r.error * f};
            }
            case BGKind::Fplus:
            case BGKind::Fminus: {
                const int n = detail::panel_count(p, 2.0 * L);
                quad::Result r = detail::shifted_line(w, p, e, s_omega, 1.0, -L, L, n, spec);
                return {r.value * norm, r.error * norm};
            }
            case BGKind::Gplus:
            case BGKind::Gminus: {
                const int n = detail::panel_count(p, L);
                quad::Result h = detail::shifted_line(w, p, e, s_omega, 1.0, 0.0, L, n, spec);
                // u = -i y, du = -i dy
                auto fv = [&](double y) {
                    const Complex u(0.0, -y);
                    const Complex weight = std::exp(-u * u / (4.0 * T * T) + Complex(0.0, s_omega) * u);
                    return Complex(0.0, -1.0) * weight * w(RindlerPoint{a, 0.0, e + y});
                };
                quad::Result v = quad::graded(fv, 0.0, delta, e, spec);
                return {(h.value + v.value) * norm, (h.error + v.error) * norm};
            }
        }
        throw DomainError("unknown integral kind");
    };

    const quad::Result r1 = compute(eps);
    const quad::Result r2 = compute(0.5 * eps);
    BGValue out;
    out.value = r1.value;
    out.error = r1.error;
    out.eps_residual = r2.value - r1.value;
    return out;
}

/// F, G and B for one configuration, ready for density_full_second_order.
inline SecondOrderIntegrals oracle_second_order(const WightmanFn& w, const DetectorParams& p,
                                                const QuadratureSpec& spec = {}) {
    SecondOrderIntegrals s;
    s.f_plus = oracle_bg_integrals(w, p, BGKind::Fplus, spec).value.real();
    s.f_minus = oracle_bg_integrals(w, p, BGKind::Fminus, spec).value.real();
    s.g_plus = oracle_bg_integrals(w, p, BGKind::Gplus, spec).value;
    s.g_minus = oracle_bg_integrals(w, p, BGKind::Gminus, spec).value;
    s.b_plus = oracle_bg_integrals(w, p, BGKind::Bplus, spec).value;
    s.b_minus = oracle_bg_integrals(w, p, BGKind::Bminus, spec).value;
    return s;
}

// ---------------------------------------------------------------------------------------
// Second derivative in Omega

/// d^2 R / dOmega^2 at fixed a and m by the 5-point stencil with one Richardson level.
inline double oracle_second_derivative(const RateFunction& fn, const DetectorParams& p, Sign sign) {
    detail::check_params(p, false);
    const double w = p.omega;
    auto R = [&](double omega) {
        const auto r = rate_at_omega(fn, p, omega);
        return sign == Sign::Plus ? r.second : r.first;
    };
    const double r0 = R(w);
    auto d = [&](double h) {
        return (-R(w + 2 * h) + 16.0 * R(w + h) - 30.0 * r0 + 16.0 * R(w - h) - R(w - 2 * h)) / (12.0 * h * h);
    };
    const double h = 1e-2 * w;
    const double coarse = d(h);
    const double fine = d(0.5 * h);
    const double value = (16.0 * fine - coarse) / 15.0;
    if (std::abs(coarse - fine) > 1e-4 * std::abs(value) + 1e-9 * std::abs(r0) / (w * w)) {
        throw AccuracyError("oracle_second_derivative: Richardson levels disagree");
    }
    return value;
}

}  // namespace udwf
