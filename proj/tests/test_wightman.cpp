#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "udwf/wightman.hpp"

using namespace udwf;

namespace {

constexpr double pi = std::numbers::pi;

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Minkowski, MasslessScalarSpacelike) {
    const SpacetimeInterval s{0.0, 2.0, 1e-9};
    EXPECT_NEAR(scalar_massless(s).real(), 1.0 / (16.0 * pi * pi), 1e-15);
}

TEST(Minkowski, MasslessFermionIsCubeOfScalarUpToConstant) {
    const SpacetimeInterval s{0.3, 1.1, 1e-6};
    const Complex ws = scalar_massless(s);
    // W_scalar = -1/(4 pi^2 rho), W_fermion = -1/(pi^4 rho^3)
    const Complex expect = -1.0 / std::pow(pi, 4) * std::pow(-4.0 * pi * pi * ws, 3);
    EXPECT_LT(rel(fermion_massless_minkowski(s), expect), 1e-13);
}

TEST(Minkowski, MassiveReducesToMassless) {
    const SpacetimeInterval s{0.0, 1.0, 1e-6};
    EXPECT_LT(rel(scalar_massive(s, 1e-5), scalar_massless(s)), 1e-8);
    EXPECT_LT(rel(fermion_massive_minkowski(s, 1e-3), fermion_massless_minkowski(s)), 1e-5);
}

TEST(Minkowski, TimelikeSeparationCarriesPhase) {
    const SpacetimeInterval s{2.0, 0.5, 1e-6};
    const Complex w = scalar_massive(s, 1.0);
    EXPECT_TRUE(std::isfinite(w.real()));
    EXPECT_GT(std::abs(w.imag()), 1e-3 * std::abs(w));
}

TEST(Minkowski, DomainErrors) {
    EXPECT_THROW(scalar_massless({0.0, 1.0, 0.0}), DomainError);
    EXPECT_THROW(scalar_massive({0.0, 1.0, 1e-6}, 0.0), DomainError);
    EXPECT_THROW(fermion_massive_minkowski({0.0, 1.0, 1e-6}, -1.0), DomainError);
}

TEST(Worldline, EmbeddingIsOnHyperbola) {
    for (double tau : {-2.0, 0.0, 0.7}) {
        const FourVector x = rindler_embed(0.8, tau);
        EXPECT_NEAR(x.x * x.x - x.t * x.t, 1.0 / (0.8 * 0.8), 1e-12);
    }
    EXPECT_THROW(rindler_embed(0.0, 1.0), DomainError);
}

TEST(Worldline, TrajectoryIdentities) {
    for (double a : {0.5, 1.0, 2.0}) {
        for (double dtau : {-1.3, 0.2, 2.0}) {
            const RindlerPoint p = make_rindler_point(a, dtau);
            const SpacetimeInterval s = trajectory_interval(p);
            EXPECT_LT(rel(fermion_massless_minkowski(s), fermion_massless_rindler(p)), 1e-6);
            EXPECT_LT(rel(scalar_massless(s), scalar_massless_rindler(p)), 1e-6);
            EXPECT_LT(rel(fermion_massive_minkowski(s, 0.4), fermion_massive_rindler(p, 0.4)), 1e-6);
        }
    }
}

TEST(Worldline, MasslessFermionThermalLimit) {
    // Near coincidence the flat-space 1/dtau^6 behaviour dominates.
    const RindlerPoint p{1.0, 1e-3, 1e-9};
    const Complex flat = -1.0 / std::pow(pi, 4) / std::pow(Complex(p.dtau, -p.epsilon), 6);
    EXPECT_LT(rel(fermion_massless_rindler(p), flat), 1e-6);
}

TEST(Worldline, SmallMassAtZeroMassIsMassless) {
    const RindlerPoint p{1.3, 0.7, 1e-4};
    EXPECT_LT(rel(wightman_small_mass(p, 0.0), fermion_massless_rindler(p)), 1e-15);
}

TEST(Worldline, SmallMassMatchesExactMassiveAtLowMass) {
    const RindlerPoint p{1.0, 0.9, 1e-4};
    const double m = 1e-2;
    const Complex exact = fermion_massive_rindler(p, m);
    const Complex approx = wightman_small_mass(p, m);
    EXPECT_LT(rel(approx, exact), 1e-3);
}

TEST(Worldline, Hermiticity) {
    for (double dtau : {0.3, 1.7}) {
        const RindlerPoint p{1.0, dtau, 1e-3}, q{1.0, -dtau, 1e-3};
        EXPECT_LT(std::abs(fermion_massless_rindler(q) - std::conj(fermion_massless_rindler(p))),
                  1e-13 * std::abs(fermion_massless_rindler(p)));
        EXPECT_LT(std::abs(wightman_large_mass(q, 5.0) - std::conj(wightman_large_mass(p, 5.0))),
                  1e-13 * std::abs(wightman_large_mass(p, 5.0)));
    }
}

TEST(Worldline, LargeDtauDoesNotOverflow) {
    const RindlerPoint p{1.0, 2000.0, 1e-6};
    const Complex w = fermion_massless_rindler(p);
    EXPECT_TRUE(std::isfinite(w.real()));
    EXPECT_LT(std::abs(w), 1e-100);
}

TEST(Worldline, RegulatedCoincidenceIsFinite) {
    const RindlerPoint p{1.0, 0.0, 1e-2};
    EXPECT_TRUE(std::isfinite(std::abs(fermion_massless_rindler(p))));
    EXPECT_TRUE(std::isfinite(std::abs(fermion_massless_series(p))));
}

TEST(PoleSeries, MatchesClosedForms) {
    for (double a : {0.5, 1.0, 2.0}) {
        for (double dtau : {-2.0, 0.4, 1.5}) {
            const RindlerPoint p{a, dtau, 1e-4};
            EXPECT_LT(rel(fermion_massless_series(p), fermion_massless_rindler(p)), 1e-8);
            EXPECT_LT(rel(wightman_small_mass_series(p, 0.2 * a), wightman_small_mass(p, 0.2 * a)), 1e-8);
            EXPECT_LT(rel(wightman_large_mass_series(p, 6.0 * a), wightman_large_mass(p, 6.0 * a)), 1e-8);
        }
    }
}

TEST(PoleSeries, ScalarSumIsCosech) {
    // sum_k (w - 2 pi i k)^-2 = 1 / (4 sinh^2(w/2))
    const Complex w(1.3, -0.01);
    const PoleSum s = pole_sum(w, 2, 1000);
    const Complex exact = 1.0 / (4.0 * std::sinh(0.5 * w) * std::sinh(0.5 * w));
    EXPECT_LT(std::abs(s.value - exact), 1e-12);
    EXPECT_LE(std::abs(s.value - exact), s.tail_bound + 1e-14);
}

TEST(PoleSeries, TailBoundShrinksWithKmax) {
    const Complex w(2.0, -1e-3);
    EXPECT_LT(pole_sum(w, 2, 200).tail_bound, pole_sum(w, 2, 20).tail_bound);
}

TEST(PoleSeries, KmaxValidation) {
    const RindlerPoint p{1.0, 1.0, 1e-4};
    EXPECT_THROW(fermion_massless_series(p, 0), DomainError);
    EXPECT_THROW(fermion_massless_series(p, kmax_cap + 1), DomainError);
    const RindlerPoint far{1.0, 40.0, 1e-4};
    EXPECT_THROW(fermion_massless_series(far, 5), ConvergenceError);
    EXPECT_THROW(pole_sum(Complex(1.0, 0.0), 3, 10), DomainError);
}

TEST(PoleSeries, KmsIndexShift) {
    const Complex w0(0.8, -1e-3);
    const std::int64_t K = 50;
    const Complex base = pole_window_sum(w0, 6, -K, K);
    const Complex moved = pole_window_sum(w0 + Complex(0.0, 2.0 * pi), 6, -K, K);
    const Complex lo = 1.0 / std::pow(w0 + Complex(0.0, 2.0 * pi * (K + 1)), 6);
    const Complex hi = 1.0 / std::pow(w0 - Complex(0.0, 2.0 * pi * K), 6);
    EXPECT_LT(std::abs(moved - base - (lo - hi)), 1e-12 * std::abs(base));
}
