#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "bessel_sd/quadrature.hpp"

using namespace bessel_sd;
using C = std::complex<double>;

namespace {
constexpr double kErfCase = 0.35449077018055819015;
constexpr double kTwoK0At1 = 0.84204887648141666667;
constexpr double kCosOverSqrt = 1.8090484758005441629;
} // namespace

TEST(Finite, Polynomial) {
    const auto out = quad::integrate_finite([](double u) { return C(u); }, 0.0, 1.0, 1e-14);
    EXPECT_NEAR(out.value.real(), 0.5, 1e-15);
    EXPECT_GE(out.evaluations, 15);
}

TEST(Finite, ComplexExponential) {
    const auto out = quad::integrate_finite([](double u) { return std::exp(C(0.0, u)); }, 0.0, std::numbers::pi, 1e-13);
    EXPECT_NEAR(std::abs(out.value - C(0.0, 2.0)), 0.0, 1e-13);
}

TEST(Finite, NarrowGaussian) {
    const auto out = quad::integrate_finite([](double u) { return C(std::exp(-25.0 * u * u)); }, -1.0, 1.0, 1e-14);
    EXPECT_NEAR(out.value.real(), kErfCase, 1e-14);
    EXPECT_LE(out.abs_error, 1e-13);
}

TEST(Finite, RelativeTolerance) {
    quad::QuadratureOptions opt;
    opt.tol_rel = 1e-12;
    const auto out = quad::integrate_finite([](double u) { return C(1e-200 * std::cos(u)); }, 0.0, 1.0, opt);
    EXPECT_NEAR(out.value.real() / (1e-200 * std::sin(1.0)), 1.0, 1e-12);
}

TEST(Finite, BudgetExhaustionThrows) {
    quad::QuadratureOptions opt;
    opt.tol_abs = 1e-15;
    opt.max_evals = 60;
    EXPECT_THROW((void)quad::integrate_finite([](double u) { return C(std::sin(200.0 * u)); }, 0.0, 10.0, opt),
                 convergence_error);
}

TEST(Finite, RejectsBadInterval) {
    EXPECT_THROW((void)quad::integrate_finite([](double) { return C(1.0); }, 1.0, 0.0, 1e-10), domain_error);
}

TEST(Finite, NonFiniteIntegrandThrows) {
    EXPECT_ANY_THROW((void)quad::integrate_finite([](double u) { return C(1.0 / (u - 0.5)); }, 0.0, 1.0, 1e-10));
}

TEST(SemiInfinite, Exponential) {
    const auto out = quad::integrate_semi_infinite([](double u) { return C(std::exp(-u)); }, 0.0, 1e-14, 1.0);
    EXPECT_NEAR(out.value.real(), 1.0, 1e-13);
}

TEST(SemiInfinite, CoshExponent) {
    auto f = [](double u) { return C(std::exp(-std::cosh(u))); };
    const auto half = quad::integrate_semi_infinite(f, 0.0, 1e-15, 1.0);
    const auto left = quad::integrate_semi_infinite([&](double u) { return f(-u); }, 0.0, 1e-15, 1.0);
    EXPECT_NEAR(half.value.real() + left.value.real(), kTwoK0At1, 1e-14);
}

TEST(SemiInfinite, GaussianMoment) {
    const auto out = quad::integrate_semi_infinite([](double u) { return C(u * std::exp(-u * u)); }, 0.0, 1e-14, 1.0);
    EXPECT_NEAR(out.value.real(), 0.5, 1e-13);
}

TEST(SemiInfinite, RejectsBadDecay) {
    EXPECT_THROW((void)quad::integrate_semi_infinite([](double) { return C(1.0); }, 0.0, 1e-10, 0.0), domain_error);
}

TEST(SqrtSingular, InverseSqrt) {
    const auto out = quad::integrate_sqrt_singular([](double u) { return C(1.0 / std::sqrt(u)); }, 0.0, 1.0, 1e-14);
    EXPECT_NEAR(out.value.real(), 2.0, 1e-13);
}

TEST(SqrtSingular, CosineOverSqrt) {
    const auto out = quad::integrate_sqrt_singular([](double u) { return C(std::cos(u) / std::sqrt(u)); }, 0.0, 1.0, 1e-14);
    EXPECT_NEAR(out.value.real(), kCosOverSqrt, 1e-13);
}

TEST(SqrtSingular, CancellingSingularity) {
    const auto out = quad::integrate_sqrt_singular([](double u) { return C(std::sqrt(u) / std::sqrt(u)); }, 0.0, 1.0, 1e-14);
    EXPECT_NEAR(out.value.real(), 1.0, 1e-14);
}
