#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "udwf/rates.hpp"

using namespace udwf;

namespace {

constexpr double pi = std::numbers::pi;

DetectorParams params(double abar, double mbar = 0.0, double sigma = 10.0) {
    DetectorParams p;
    p.abar = abar;
    p.mbar = mbar;
    p.sigma = sigma;
    return p;
}

}  // namespace

TEST(Rates, MasslessInfiniteTimeValue) {
    // Omega = 1, abar = 1: (1 + 5 + 4) / (60 pi^3) / (e^{2 pi} - 1)
    const RatePair r = rate_massless_inf(params(1.0));
    EXPECT_NEAR(r.r_minus / (10.0 / (60.0 * std::pow(pi, 3)) / std::expm1(2.0 * pi)), 1.0, 1e-14);
    EXPECT_EQ(r.regime, Regime::Massless);
    EXPECT_EQ(r.horizon, Horizon::InfiniteTime);
    EXPECT_TRUE(r.validity.ok());
}

TEST(Rates, DetailedBalanceEverywhere) {
    for (double a : {0.1, 0.37, 1.0, 4.2, 10.0}) {
        for (Horizon h : {Horizon::InfiniteTime, Horizon::FiniteTime}) {
            const double target = std::exp(2.0 * pi / a);
            for (auto [reg, m] : {std::pair{Regime::Massless, 0.0}, std::pair{Regime::SmallMass, 0.1},
                                  std::pair{Regime::LargeMass, 3.0}}) {
                const RatePair r = rate(reg, h, params(a, m));
                EXPECT_NEAR(r.r_plus / r.r_minus / target, 1.0, 1e-12) << to_string(reg) << " a=" << a;
            }
        }
    }
}

TEST(Rates, ScalarFactorization) {
    for (double a : {0.2, 1.0, 5.0}) {
        const DetectorParams p = params(a);
        const double k = (1.0 + 5.0 * a * a + 4.0 * std::pow(a, 4)) / (30.0 * pi * pi);
        EXPECT_NEAR(rate_massless_inf(p).r_minus / (k * rate_scalar_reference(p).r_minus), 1.0, 1e-13);
    }
}

TEST(Rates, SmallMassReducesToMassless) {
    for (Horizon h : {Horizon::InfiniteTime, Horizon::FiniteTime}) {
        const RatePair a = rate(Regime::SmallMass, h, params(0.8, 0.0));
        const RatePair b = rate(Regime::Massless, h, params(0.8));
        EXPECT_DOUBLE_EQ(a.r_minus, b.r_minus);
    }
}

TEST(Rates, SmallMassLowersTheRate) {
    EXPECT_LT(rate_small_mass_inf(params(1.0, 0.3)).r_minus, rate_massless_inf(params(1.0)).r_minus);
}

TEST(Rates, LargeSigmaRecoversInfiniteTime) {
    const DetectorParams p = params(1.3, 0.2, 1e9);
    EXPECT_NEAR(rate_massless_finite(p).r_minus / rate_massless_inf(p).r_minus, 1.0, 1e-12);
    EXPECT_NEAR(rate_small_mass_finite(p).r_minus / rate_small_mass_inf(p).r_minus, 1.0, 1e-12);
}

TEST(Rates, FiniteTimeCorrectionScalesAsInverseSigmaSquared) {
    const double d10 = rate_massless_finite(params(1.0, 0.0, 10.0)).r_minus - rate_massless_inf(params(1.0)).r_minus;
    const double d20 = rate_massless_finite(params(1.0, 0.0, 20.0)).r_minus - rate_massless_inf(params(1.0)).r_minus;
    EXPECT_NEAR(d10 / d20, 4.0, 1e-12);
}

TEST(Rates, SecondDerivativeCorrectionReproducesFiniteExcitation) {
    for (double a : {0.5, 1.0, 2.0}) {
        const DetectorParams p = params(a, 0.2);
        EXPECT_NEAR(finite_time_correct(rate_massless_inf, p).r_minus / rate_massless_finite(p).r_minus, 1.0, 1e-6);
        EXPECT_NEAR(finite_time_correct(rate_small_mass_inf, p).r_minus / rate_small_mass_finite(p).r_minus, 1.0, 1e-6);
    }
}

TEST(Rates, FiniteDeExcitationIsDetailedBalanceOfCorrectedExcitation) {
    const DetectorParams p = params(1.0);
    const RatePair c = finite_time_correct(rate_massless_inf, p);
    EXPECT_NEAR(rate_massless_finite(p).r_plus / (c.r_minus * std::exp(2.0 * pi)), 1.0, 1e-6);
}

TEST(Rates, ValidityFlags) {
    const RatePair lm = rate_large_mass_finite(params(1.0, 2.0));
    EXPECT_TRUE(lm.validity.has(Validity::TruncatedAsymptotic));
    EXPECT_NE(lm.validity.str().find("truncated_asymptotic"), std::string::npos);
    EXPECT_TRUE(rate_small_mass_inf(params(0.2, 0.3)).validity.has(Validity::SmallMassOutside));
    EXPECT_TRUE(rate_massless_finite(params(1.0, 0.0, 3.0)).validity.has(Validity::ShortInteraction));
    EXPECT_EQ(rate_massless_finite(params(1.0)).validity.str(), "ok");
    EXPECT_EQ(Validity(Validity::SmallMassOutside | Validity::ShortInteraction).str(), "small_mass_outside|short_interaction");
}

TEST(Rates, DomainErrors) {
    EXPECT_THROW(rate_massless_inf(params(0.0)), DomainError);
    EXPECT_THROW(rate_massless_inf(params(-1.0)), DomainError);
    EXPECT_THROW(rate_small_mass_inf(params(1.0, -0.1)), DomainError);
    EXPECT_THROW(rate_large_mass_inf(params(1.0, 0.0)), DomainError);
    EXPECT_THROW(rate_massless_finite(params(1.0, 0.0, 0.0)), DomainError);
    EXPECT_THROW(rate(Regime::ScalarReference, Horizon::FiniteTime, params(1.0)), DomainError);
}

TEST(Rates, RegimeNames) {
    for (Regime r : {Regime::Massless, Regime::SmallMass, Regime::LargeMass, Regime::ScalarReference}) {
        EXPECT_EQ(parse_regime(to_string(r)), r);
    }
    EXPECT_THROW(parse_regime("heavy"), DomainError);
}

TEST(Rates, ReportedNormalisation) {
    DetectorParams p = params(1.0);
    p.omega = 2.0;
    p.lambda_bar = 1e-3;
    const RatePair r = rate_massless_inf(p);
    const ReportedRates rep = report_rate(r, p);
    EXPECT_DOUBLE_EQ(rep.r_minus, 1e-6 * r.r_minus / 32.0);
    const RatePair s = rate_scalar_reference(p);
    EXPECT_DOUBLE_EQ(report_rate(s, p).r_minus, 1e-6 * s.r_minus / 2.0);
}

TEST(Rates, ReportedRateIsOmegaIndependent) {
    DetectorParams p = params(0.7);
    p.lambda_bar = 1e-3;
    DetectorParams q = p;
    q.omega = 3.0;
    EXPECT_NEAR(report_rate(rate_massless_finite(q), q).r_minus / report_rate(rate_massless_finite(p), p).r_minus, 1.0, 1e-13);
}

TEST(Rates, RateAtOmegaHoldsDimensionfulAccelerationFixed) {
    const DetectorParams p = params(1.0);
    const auto [rm, rp] = rate_at_omega(rate_massless_inf, p, 2.0);
    DetectorParams q = p;
    q.omega = 2.0;
    q.abar = 0.5;
    EXPECT_DOUBLE_EQ(rm, rate_massless_inf(q).r_minus);
    EXPECT_DOUBLE_EQ(rp, rate_massless_inf(q).r_plus);
}
