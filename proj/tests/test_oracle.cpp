#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "udwf/oracle.hpp"

using namespace udwf;

namespace {

constexpr double pi = std::numbers::pi;

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

DetectorParams params(double abar, double mbar = 0.0, double sigma = 10.0) {
    DetectorParams p;
    p.abar = abar;
    p.mbar = mbar;
    p.sigma = sigma;
    return p;
}

WightmanFn massless() {
    return [](const RindlerPoint& p) { return fermion_massless_rindler(p); };
}

}  // namespace

TEST(Quadrature, PanelsIntegrateSmoothFunction) {
    const auto r = quad::panels([](double x) { return Complex(std::exp(-x * x), 0.0); }, -8.0, 8.0, 8, {});
    EXPECT_NEAR(r.value.real(), std::sqrt(pi), 1e-13);
}

TEST(Quadrature, GradedHandlesEndpointPeak) {
    // int_0^1 dx / (x + 1e-6) = log(1 + 1e6)
    const auto r = quad::graded([](double x) { return Complex(1.0 / (x + 1e-6), 0.0); }, 0.0, 1.0, 1e-6, {});
    EXPECT_NEAR(r.value.real() / std::log1p(1e6), 1.0, 1e-10);
}

TEST(Reports, BudgetAndFloor) {
    EXPECT_TRUE(make_report("x", 1.0 + 1e-9, 1.0, 1e-8).pass);
    EXPECT_FALSE(make_report("x", 1.1, 1.0, 1e-8).pass);
    EXPECT_TRUE(make_report("x", 1e-20, 0.0, 1e-8, 1e-15).pass);
    EXPECT_FALSE(make_check("y", false, 2.0, 4.0).pass);
}

TEST(FourierSeries, ReproducesInfiniteTimeRates) {
    for (double a : {0.5, 1.0, 2.0}) {
        const DetectorParams p = params(a);
        EXPECT_LT(rel(oracle_fourier_series(p, Sign::Minus).value, rate_massless_inf(p).r_minus), 1e-10);
        EXPECT_LT(rel(oracle_fourier_series(p, Sign::Plus).value, rate_massless_inf(p).r_plus), 1e-10);
    }
}

TEST(FourierSeries, SmallMassAndScalar) {
    const DetectorParams p = params(1.0, 0.25);
    EXPECT_LT(rel(oracle_fourier_series(p, Sign::Minus, 2000, Regime::SmallMass).value, rate_small_mass_inf(p).r_minus), 1e-10);
    EXPECT_LT(rel(oracle_fourier_series(p, Sign::Plus, 2000, Regime::ScalarReference).value, rate_scalar_reference(p).r_plus),
              1e-10);
    EXPECT_THROW(oracle_fourier_series(p, Sign::Minus, 2000, Regime::LargeMass), DomainError);
}

TEST(FourierSeries, TooFewPolesIsAConvergenceError) {
    EXPECT_THROW(oracle_fourier_series(params(20.0), Sign::Plus, 3), ConvergenceError);
}

TEST(FourierSeries, OnePoleTransformAgainstQuadrature) {
    // 2 pi (-1)^{n/2} w^{n-1} / ((n-1)! a^n) e^{w eps} q^{|k|}
    for (auto [w, a, k, n] : {std::tuple{1.0, 1.0, std::int64_t{-1}, 6}, std::tuple{0.7, 1.3, std::int64_t{-2}, 4},
                              std::tuple{1.5, 2.0, std::int64_t{-1}, 2}}) {
        const double eps = 0.05;
        const double sgn = (n / 2) % 2 == 0 ? 1.0 : -1.0;
        const double closed = 2.0 * pi * sgn * std::pow(w, n - 1) / (std::tgamma(n) * std::pow(a, n)) * std::exp(w * eps) *
                              std::exp(-2.0 * pi * w / a * static_cast<double>(-k));
        EXPECT_LT(rel(pole_transform_numeric(w, a, k, n, eps, Sign::Minus), closed), 1e-9);
    }
}

TEST(FourierSeries, PolesAboveTheContourDoNotContribute) {
    const Complex v = pole_transform_numeric(1.0, 1.0, 1, 4, 0.05, Sign::Minus);
    EXPECT_LT(std::abs(v), 1e-9);
}

TEST(GaussianResponse, ApproachesInfiniteTimeForLongInteraction) {
    const DetectorParams p = params(1.0, 0.0, 40.0);
    const OracleValue o = oracle_gaussian_response(massless(), p, Sign::Minus);
    EXPECT_LT(std::abs(o.value / rate_massless_inf(p).r_minus - 1.0), 5e-3);
    EXPECT_LT(std::abs(o.imag), 1e-6 * std::abs(o.value));
    EXPECT_LT(o.eps_residual, 1e-3 * std::abs(o.value));
}

TEST(GaussianResponse, ExpansionInInverseInteractionTime) {
    // The exact response is R(inf) + R''/(4 T^2) + O(T^-4).
    const DetectorParams p = params(1.0, 0.0, 20.0);
    const double T = p.sigma;
    const double approx = rate_massless_inf(p).r_minus + oracle_second_derivative(rate_massless_inf, p, Sign::Minus) / (4.0 * T * T);
    EXPECT_LT(std::abs(oracle_gaussian_response(massless(), p, Sign::Minus).value / approx - 1.0), 2e-4);
}

TEST(GaussianResponse, DomainValidation) {
    QuadratureSpec spec;
    spec.domain_halfwidth_in_T = 2.0;
    EXPECT_THROW(oracle_gaussian_response(massless(), params(1.0), Sign::Minus, spec), DomainError);
    EXPECT_THROW(oracle_gaussian_response(massless(), params(1.0, 0.0, std::numeric_limits<double>::infinity()), Sign::Minus),
                 DomainError);
}

TEST(ModeSum, MassiveScalarAtEqualTime) {
    for (double m : {0.5, 1.0}) {
        const SpacetimeInterval s{0.0, 1.0, 1e-6};
        EXPECT_LT(rel(oracle_scalar_massive(s, m), scalar_massive(s, m)), 1e-7);
    }
}

TEST(ModeSum, MassiveScalarWithTimeSeparation) {
    const SpacetimeInterval s{0.5, 1.0, 0.05};
    EXPECT_LT(rel(oracle_scalar_massive(s, 1.0), scalar_massive(s, 1.0)), 1e-6);
    EXPECT_THROW(oracle_scalar_massive({0.5, 1.0, 1e-6}, 1.0), DomainError);
}

TEST(Gradients, AnalyticMatchesFiniteDifference) {
    const SpacetimeInterval s{0.2, 1.3, 1e-6};
    for (double m : {0.0, 0.8}) {
        const Gradient a = scalar_gradient_analytic(s, m);
        const Gradient n = scalar_gradient_numeric(s, m);
        for (int i = 0; i < 4; ++i) EXPECT_LE(std::abs(a[i] - n[i]), 1e-7 * std::abs(a[0]) + 1e-7 * std::abs(a[1]));
    }
}

TEST(Gradients, ReconstructFermionTwoPointFunctions) {
    const SpacetimeInterval s{0.0, 1.0, 1e-6};
    EXPECT_LT(rel(oracle_fermion_from_gradients(s, 0.0), fermion_massless_minkowski(s)), 1e-5);
    EXPECT_LT(rel(oracle_fermion_from_gradients(s, 1.0), fermion_massive_minkowski(s, 1.0)), 1e-5);
    EXPECT_LT(rel(oracle_fermion_from_analytic_gradients(s, 1.0), fermion_massive_minkowski(s, 1.0)), 1e-12);
}

TEST(SecondOrder, RealPartOfGIsHalfF) {
    const DetectorParams p = params(1.0);
    const SecondOrderIntegrals in = oracle_second_order(massless(), p);
    EXPECT_LT(std::abs(2.0 * in.g_plus.real() / in.f_plus - 1.0), 1e-6);
    EXPECT_LT(std::abs(2.0 * in.g_minus.real() / in.f_minus - 1.0), 1e-6);
    EXPECT_LT(std::abs(in.b_plus), 1e-10 * in.f_minus);
}

TEST(SecondOrder, FIsTheNormalisedGaussianResponse) {
    const DetectorParams p = params(1.0);
    const double f = oracle_bg_integrals(massless(), p, BGKind::Fminus).value.real();
    const double r = oracle_gaussian_response(massless(), p, Sign::Minus).value;
    // F is taken at the regulator itself, the response is extrapolated to eps -> 0.
    EXPECT_LT(std::abs(f / (p.sigma * std::sqrt(pi) * r) - 1.0), 1e-5);
}

TEST(SecondDerivative, MatchesClosedBracket) {
    const DetectorParams p = params(1.0);
    const double T = p.sigma;
    const double closed = (rate_massless_finite(p).r_minus - rate_massless_inf(p).r_minus) * 2.0 * T * T;
    EXPECT_LT(std::abs(oracle_second_derivative(rate_massless_inf, p, Sign::Minus) / closed - 1.0), 1e-6);
}
