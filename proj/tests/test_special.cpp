#include <gtest/gtest.h>

#include <cmath>
#include <tuple>
#include <vector>

#include "udwf/special.hpp"

using udwf::Complex;
namespace sp = udwf::special;

namespace {

// Reference values computed once at 30 digits.
struct Ref {
    Complex z;
    int order;
    Complex value;
};

const std::vector<Ref> refs{
    {{0.5, 0.3}, 0, {0.76067977866595654, -0.43410456982107325}},
    {{0.5, 0.3}, 1, {1.0955258713956809, -0.94472266890989855}},
    {{0.5, 0.3}, 2, {2.3156570435181384, -5.1459816043719765}},
    {{3.0, -2.0}, 0, {-0.020787225587429772, 0.024312663567167654}},
    {{3.0, -2.0}, 1, {-0.024809520070151529, 0.025570749056351798}},
    {{3.0, -2.0}, 2, {-0.040105696098684877, 0.028480849263898783}},
    {{10.0, 5.0}, 0, {8.2975524594259101e-6, 1.4668532910602615e-5}},
    {{10.0, 5.0}, 1, {8.9074008179539984e-6, 1.5086785431163546e-5}},
    {{10.0, 5.0}, 2, {1.0929679424791634e-5, 1.6369826514152463e-5}},
    {{1e-3, 0.0}, 0, {7.0236888005623813, 0.0}},
    {{1e-3, 0.0}, 1, {999.99623815608555, 0.0}},
    {{1e-3, 0.0}, 2, {1999999.5000009716, 0.0}},
    {{1.9, 1.9}, 0, {-0.071004291407974887, -0.08504636734129006}},
    {{1.9, 1.9}, 1, {-0.09022867547501663, -0.087653092580118572}},
    {{1.9, 1.9}, 2, {-0.16462627459488816, -0.083690797396606871}},
    {{0.0, 1.0}, 0, {-0.138633715204054, -1.2019697153172065}},
    {{0.0, 1.0}, 1, {-0.69122984369208426, -1.2271262301435715}},
    {{0.0, 1.0}, 2, {-2.592886175491197, 0.18048997206696203}},
};

}  // namespace

TEST(Bessel, MatchesHighPrecisionReferences) {
    for (const Ref& r : refs) {
        const Complex v = sp::bessel_k(r.order, r.z);
        EXPECT_LE(std::abs(v - r.value), 1e-13 * std::abs(r.value)) << "K" << r.order << "(" << r.z << ")";
    }
}

TEST(Bessel, K1AtOne) { EXPECT_NEAR(sp::bessel_k(1, 1.0), 0.60190723019723458, 1e-15); }

TEST(Bessel, TripleAgreesWithSingleCalls) {
    const Complex z(2.7, 0.4);
    const sp::KTriple k = sp::bessel_k012(z);
    EXPECT_EQ(k.k0, sp::bessel_k(0, z));
    EXPECT_EQ(k.k1, sp::bessel_k(1, z));
    EXPECT_EQ(k.k2, sp::bessel_k(2, z));
}

TEST(Bessel, ContinuousAcrossRegionBoundary) {
    for (double phase : {0.0, 0.6, 1.2, 1.5}) {
        const Complex in = std::polar(2.0 - 1e-14, phase);
        const Complex out = std::polar(2.0 + 1e-14, phase);
        for (int n = 0; n <= 2; ++n) {
            EXPECT_LE(std::abs(sp::bessel_k(n, in) - sp::bessel_k(n, out)), 1e-12 * std::abs(sp::bessel_k(n, in)));
        }
    }
}

TEST(Bessel, ConjugateSymmetry) {
    for (Complex z : {Complex(0.3, 0.8), Complex(5.0, 3.0), Complex(1.5, -1.1)}) {
        for (int n = 0; n <= 2; ++n) {
            EXPECT_LE(std::abs(sp::bessel_k(n, std::conj(z)) - std::conj(sp::bessel_k(n, z))), 1e-14 * std::abs(sp::bessel_k(n, z)));
        }
    }
}

TEST(Bessel, RealOverloadRejectsNonPositive) {
    EXPECT_THROW(sp::bessel_k(0, 0.0), udwf::DomainError);
    EXPECT_THROW(sp::bessel_k(1, -1.0), udwf::DomainError);
}

TEST(Bessel, RejectsZeroAndNonFinite) {
    EXPECT_THROW(sp::bessel_k(0, Complex(0.0, 0.0)), udwf::DomainError);
    EXPECT_THROW(sp::bessel_k(0, Complex(NAN, 0.0)), udwf::DomainError);
    EXPECT_THROW(sp::bessel_k(3, Complex(1.0, 0.0)), udwf::DomainError);
}

TEST(Bessel, LeftHalfPlaneOutsideDiskIsAnAccuracyError) {
    EXPECT_THROW(sp::bessel_k(0, Complex(-3.0, 0.5)), udwf::AccuracyError);
    EXPECT_NO_THROW(sp::bessel_k(0, Complex(-1.0, 0.5)));
}

TEST(Bessel, SmallArgumentForm) {
    const Complex z(1e-4, 2e-5);
    EXPECT_LE(std::abs(sp::bessel_k_small(1, z) / sp::bessel_k(1, z) - 1.0), 1e-6);
    EXPECT_LE(std::abs(sp::bessel_k_small(2, z) / sp::bessel_k(2, z) - 1.0), 1e-6);
    EXPECT_THROW(sp::bessel_k_small(0, z), udwf::DomainError);
}

TEST(Bessel, LargeArgumentForm) {
    for (int n = 0; n <= 2; ++n) {
        const Complex z(60.0, 10.0);
        EXPECT_LE(std::abs(sp::bessel_k_asymptotic(n, z) / sp::bessel_k(n, z) - 1.0), 1e-3);
    }
}

TEST(Bessel, WronskianLikeRecurrenceOnComplexGrid) {
    for (double re : {0.2, 1.0, 4.0, 15.0}) {
        for (double im : {-3.0, 0.0, 2.0}) {
            const Complex z(re, im);
            const sp::KTriple k = sp::bessel_k012(z);
            EXPECT_LE(std::abs(k.k2 - k.k0 - 2.0 * k.k1 / z), 1e-14 * std::abs(k.k2));
        }
    }
}
