#pragma once

// Modified Bessel functions of the second kind K0, K1, K2 for complex argument.
//
// Evaluation regions:
//   |z| <= 2            ascending series (principal log, valid on the cut plane |arg z| < pi)
//   |z| >  2, Re z >= 0 Steed's continued fraction CF2 (Temme's normalisation), which
//                       converges on the whole closed right half-plane, the imaginary
//                       axis included
// K2 always comes from the recurrence K2 = K0 + (2/z) K1.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "udwf/errors.hpp"

namespace udwf {

using Complex = std::complex<double>;

namespace special {

namespace detail {

struct K01 {
    Complex k0;
    Complex k1;
};

inline K01 k01_series(Complex z) {
    const Complex t = 0.25 * z * z;
    const Complex L = std::log(0.5 * z) + std::numbers::egamma;

    // term0 = t^k / (k!)^2, term1 = t^k / (k! (k+1)!)
    Complex term0 = 1.0;
    Complex term1 = 1.0;
    double hk = 0.0;
    Complex s0 = -L;
    Complex s1 = L - 0.5;
    for (int k = 1; k < 200; ++k) {
        const double dk = k;
        term0 *= t / (dk * dk);
        term1 *= t / (dk * (dk + 1.0));
        hk += 1.0 / dk;
        const double hk1 = hk + 1.0 / (dk + 1.0);
        const Complex d0 = term0 * (hk - L);
        const Complex d1 = term1 * (L - 0.5 * (hk + hk1));
        s0 += d0;
        s1 += d1;
        if (std::abs(d0) <= 1e-17 * std::abs(s0) && std::abs(d1) <= 1e-17 * std::abs(s1)) {
            return {s0, 1.0 / z + 0.5 * z * s1};
        }
    }
    throw AccuracyError("bessel_k: ascending series did not converge");
}

// Steed's CF2 for order 0; returns K0 and K1.
inline K01 k01_continued_fraction(Complex z) {
    constexpr double a1 = 0.25;
    Complex b = 2.0 * (1.0 + z);
    Complex d = 1.0 / b;
    Complex h = d;
    Complex delh = d;
    Complex q1 = 0.0;
    Complex q2 = 1.0;
    Complex q = a1;
    Complex c = a1;
    double a = -a1;
    Complex s = 1.0 + q * delh;
    for (int i = 1; i < 20000; ++i) {
        a -= 2.0 * i;
        c = -a * c / (i + 1.0);
        const Complex qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const Complex dels = q * delh;
        s += dels;
        if (std::abs(dels) < 1e-16 * std::abs(s)) {
            h = a1 * h;
            const Complex k0 = std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z) / s;
            const Complex k1 = k0 * (z + 0.5 - h) / z;
            return {k0, k1};
        }
    }
    throw AccuracyError("bessel_k: continued fraction did not converge");
}

inline void check_order(int order, int lo, int hi) {
    if (order < lo || order > hi) {
        throw DomainError("bessel_k: order " + std::to_string(order) + " not supported");
    }
}

inline void check_argument(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("bessel_k: non-finite argument");
    }
    if (z == Complex(0.0, 0.0)) {
        throw DomainError("bessel_k: argument is zero");
    }
}

}  // namespace detail

/// K0, K1 and K2 at the same argument. Cheaper than three separate calls.
struct KTriple {
    Complex k0;
    Complex k1;
    Complex k2;
};

inline KTriple bessel_k012(Complex z) {
    detail::check_argument(z);
    detail::K01 k;
    if (std::abs(z) <= 2.0) {
        k = detail::k01_series(z);
    } else if (z.real() >= 0.0) {
        k = detail::k01_continued_fraction(z);
    } else {
        throw AccuracyError("bessel_k: |z| > 2 in the left half-plane is outside every evaluation region");
    }
    return {k.k0, k.k1, k.k0 + 2.0 * k.k1 / z};
}

/// K_order(z) on the principal branch, order in {0, 1, 2}.
inline Complex bessel_k(int order, Complex z) {
    detail::check_order(order, 0, 2);
    const KTriple k = bessel_k012(z);
    switch (order) {
        case 0: return k.k0;
        case 1: return k.k1;
        default: return k.k2;
    }
}

inline double bessel_k(int order, double x) {
    if (!(x > 0.0)) {
        throw DomainError("bessel_k: real argument must be positive");
    }
    return bessel_k(order, Complex(x, 0.0)).real();
}

/// Leading small-argument form (1/2) Gamma(nu) (z/2)^(-nu), nu in {1, 2}.
inline Complex bessel_k_small(int order, Complex z) {
    detail::check_order(order, 1, 2);
    detail::check_argument(z);
    return 0.5 * std::tgamma(static_cast<double>(order)) * std::pow(0.5 * z, -order);
}

/// Large-argument form truncated after the 1/z correction:
/// sqrt(pi/2z) e^{-z} (1 + (4 nu^2 - 1)/(8z)).
inline Complex bessel_k_asymptotic(int order, Complex z) {
    detail::check_order(order, 0, 2);
    detail::check_argument(z);
    const double mu = 4.0 * order * order;
    return std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z) * (1.0 + (mu - 1.0) / (8.0 * z));
}

}  // namespace special
}  // namespace udwf
