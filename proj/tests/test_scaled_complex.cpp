#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "bessel_sd/scaled_complex.hpp"

using bessel_sd::ScaledComplex;
using C = std::complex<double>;

TEST(ScaledComplex, NormalizedMantissaRange) {
    for (double x : {1e-300, 0.3, 1.0, 2.0, 2.718281828459045, 7.0, 1e300}) {
        const auto s = ScaledComplex::from_complex({x, -0.5 * x});
        const double m = std::abs(s.mantissa());
        EXPECT_GE(m, 1.0);
        EXPECT_LT(m, std::numbers::e);
    }
}

TEST(ScaledComplex, AdditiveIdentity) {
    const auto one = ScaledComplex::from_complex(1.0);
    const auto sum = scaled_add(one, ScaledComplex{});
    EXPECT_EQ(sum.to_complex(), C(1.0, 0.0));
    EXPECT_EQ(sum.log_scale(), 0.0);
}

TEST(ScaledComplex, ExactCancellation) {
    const auto one = ScaledComplex::from_complex(1.0);
    EXPECT_TRUE(scaled_add(one, -one).is_zero());
    EXPECT_TRUE(std::isinf(scaled_add(one, -one).log_abs()));
}

TEST(ScaledComplex, SameScaleAddition) {
    const auto sum = scaled_add(ScaledComplex(2.0, 10.0), ScaledComplex(3.0, 10.0));
    EXPECT_EQ(sum.log_scale(), 11.0);
    EXPECT_NEAR(sum.mantissa().real(), 5.0 / std::numbers::e, 1e-15);
    EXPECT_NEAR(sum.log_abs(), std::log(5.0) + 10.0, 1e-14);
}

TEST(ScaledComplex, FarOutsideDoubleRange) {
    const auto a = ScaledComplex::from_log({-5000.0, 0.25});
    const auto b = ScaledComplex::from_log({-5000.0 + std::log(3.0), 0.25});
    const auto sum = a + b;
    EXPECT_NEAR(sum.log_abs(), -5000.0 + std::log(4.0), 1e-12);
    EXPECT_NEAR(sum.arg(), 0.25, 1e-15);
    EXPECT_NEAR((a * b).log_abs(), -10000.0 + std::log(3.0), 1e-11);
    EXPECT_NEAR((b / a).to_complex().real(), 3.0, 1e-11);
}

TEST(ScaledComplex, NegligibleAddendKeepsLargerFrame) {
    const auto big = ScaledComplex::from_log({100.0, 0.0});
    const auto tiny = ScaledComplex::from_log({-100.0, 0.0});
    EXPECT_EQ(relative_difference(big + tiny, big), 0.0);
}

TEST(ScaledComplex, RoundTrip) {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> exponent(-300.0, 300.0);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
        const C z = std::polar(std::pow(10.0, exponent(rng)), angle(rng));
        const C back = ScaledComplex::from_complex(z).to_complex();
        EXPECT_LE(std::abs(back - z) / std::abs(z), 4 * std::numeric_limits<double>::epsilon());
    }
}

TEST(ScaledComplex, InFrameAndConjugate) {
    const auto s = ScaledComplex::from_complex({3.0, 4.0});
    const auto shifted = s.in_frame(5.0);
    EXPECT_EQ(shifted.log_scale(), 5.0);
    EXPECT_NEAR(std::abs(shifted.to_complex() - C(3.0, 4.0)), 0.0, 1e-14);
    EXPECT_NEAR(s.conj().arg(), -std::arg(C(3.0, 4.0)), 1e-15);
}
