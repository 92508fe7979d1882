#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bessel_sd/evaluators.hpp"

using namespace bessel_sd;

namespace {

struct Frozen {
    double log_modulus;
    double phase;
};

ScaledComplex frozen(Frozen f) { return ScaledComplex::from_log({f.log_modulus, f.phase}); }

constexpr Frozen kNu03p5i_y2{-7.8022697044877063859, -2.9982633316705895932};
constexpr Frozen kNu5_05i_y1{-7.8997769781217268944, 0.0};
constexpr Frozen kNu10_1i_y2{-16.092491703461874382, 0.0};
constexpr Frozen kMu1_r025_y3{-6.9987920403870126527, 0.49965437082970533446};
constexpr Frozen kMuHalf_rm07_y10{-17.715638261282612273, -1.0009091615774967402};
constexpr Frozen kQuarterPi_r05_y10{-13.399194665829153292, 0.36462737578645688698};
constexpr Frozen kTheta0_r0_y5{-5.6018312137170631795, 0.0};
constexpr Frozen kMuHalf_r05_y100{-178.2064261046058, -2.262983528712486};
constexpr Frozen kMuHalf_r05_y200{-356.954425049243, 1.954836097617866};
constexpr double kK0At1 = 0.42102443824070833334;
constexpr double kKHalfAt1 = 0.46106850444789455844;
constexpr double kLn10 = std::numbers::ln10;

void expect_matches(const EvalOutcome& o, Frozen f, double tol) {
    EXPECT_LE(relative_difference(o.value, frozen(f)), tol) << "method " << to_string(o.method);
    EXPECT_GE(o.abs_error_scaled, 0.0);
    EXPECT_GE(o.evaluations, 1);
}

} // namespace

TEST(Direct, K0AtOne) {
    const auto o = k_direct({0.0, 0.0}, 1.0);
    EXPECT_NEAR(o.value.to_complex().real(), kK0At1, 1e-14);
    EXPECT_NEAR(o.value.to_complex().imag(), 0.0, 1e-15);
    EXPECT_EQ(o.method, Method::direct);
}

TEST(Direct, HalfIntegerClosedForm) {
    EXPECT_NEAR(k_direct({0.5, 0.0}, 1.0).value.to_complex().real(), kKHalfAt1, 1e-14);
    EXPECT_NEAR(k_series({0.5, 0.0}, 1.0).value.to_complex().real(), kKHalfAt1, 1e-13);
}

TEST(Direct, AgreesWithSeries) {
    expect_matches(k_direct({0.3, 5.0}, 2.0), kNu03p5i_y2, 1e-12);
    expect_matches(k_series({0.3, 5.0}, 2.0), kNu03p5i_y2, 1e-12);
}

TEST(Direct, PureImaginaryOrder) {
    const auto o = k_direct({0.0, 5.05}, 1.0);
    expect_matches(o, kNu5_05i_y1, 1e-12);
    EXPECT_NEAR(o.value.log_abs(), -kHalfPi * 5.05, 2.0);
}

TEST(Series, IntegerOrderRejected) {
    EXPECT_THROW((void)k_series({1.0, 0.0}, 1.0), domain_error);
}

TEST(Series, CancellationRaisesPrecisionExhausted) {
    EXPECT_THROW((void)k_series({0.0, 80.0}, 50.0), precision_exhausted);
}

TEST(Monotonic, AgreesWithDirect) {
    const auto sd = k_monotonic_sd(0.5, std::numbers::pi / 4, 10.0);
    expect_matches(sd, kQuarterPi_r05_y10, 1e-12);
    EXPECT_LE(relative_difference(sd.value, k_direct({0.5, 10.0 * std::sin(std::numbers::pi / 4)}, 10.0).value), 1e-9);
    EXPECT_EQ(sd.method, Method::steepest_monotonic);
    expect_matches(k_monotonic_sd(0.0, 0.0, 5.0), kTheta0_r0_y5, 1e-13);
}

TEST(Monotonic, BoundaryAndNearBoundary) {
    const double y = 7.0;
    const auto at = k_monotonic_sd(0.2, kHalfPi, y);
    EXPECT_LE(relative_difference(at.value, k_direct({0.2, y}, y).value), 1e-11);
    EXPECT_FALSE(at.near_boundary);
    const auto near = k_monotonic_sd(0.2, kHalfPi - 1e-8, y);
    EXPECT_TRUE(near.near_boundary);
    EXPECT_LE(relative_difference(near.value, at.value), 1e-6);
}

TEST(Oscillatory, UpperContourAgreesWithSeries) {
    expect_matches(k_oscillatory_thm13(0.0, kLn10, 2.0), kNu10_1i_y2, 1e-12);
    expect_matches(k_series({0.0, 10.1}, 2.0), kNu10_1i_y2, 1e-8);
    expect_matches(k_oscillatory_thm13(0.0, kLn10, 1.0), kNu5_05i_y1, 1e-12);
    expect_matches(k_oscillatory_thm13(0.3, std::acosh(2.5), 2.0), kNu03p5i_y2, 1e-12);
    expect_matches(k_oscillatory_thm13(0.25, 1.0, 3.0), kMu1_r025_y3, 1e-12);
}

TEST(Oscillatory, TwoContoursAgree) {
    const auto a = k_oscillatory_thm13(-0.7, 0.5, 10.0);
    const auto b = k_oscillatory_prop33(-0.7, 0.5, 10.0);
    expect_matches(a, kMuHalf_rm07_y10, 1e-12);
    expect_matches(b, kMuHalf_rm07_y10, 1e-12);
    const double combined = a.abs_error_scaled * std::exp(a.value.log_scale() - b.value.log_scale()) + b.abs_error_scaled;
    EXPECT_LE(std::abs(a.value.in_frame(b.value.log_scale()).mantissa() - b.value.mantissa()), combined);
}

TEST(Oscillatory, LargeArgument) {
    expect_matches(k_oscillatory_thm13(0.5, 0.5, 100.0), kMuHalf_r05_y100, 1e-11);
    expect_matches(k_oscillatory_thm13(0.5, 0.5, 200.0), kMuHalf_r05_y200, 1e-11);
}

TEST(Oscillatory, FarBelowDoubleRange) {
    const auto o = k_oscillatory_thm13(0.1, 1.0, 2000.0);
    EXPECT_TRUE(o.value.is_finite());
    EXPECT_LT(o.value.log_abs(), -4000.0);
    EXPECT_LE(o.relative_error(), 1e-10);
}

TEST(Oscillatory, RejectsBadParameters) {
    EXPECT_THROW((void)k_oscillatory_thm13(0.0, 0.0, 1.0), domain_error);
    EXPECT_THROW((void)k_oscillatory_prop33(0.0, 1.0, -1.0), domain_error);
    EXPECT_THROW((void)k_direct({0.0, 1.0}, 0.0), domain_error);
}

TEST(Tolerance, UnreachableTargetRaisesPrecisionExhausted) {
    EvaluatorConfig cfg;
    cfg.tol_rel = 1e-17;
    EXPECT_THROW((void)k_oscillatory_thm13(0.0, 1.0, 3.0, cfg), precision_exhausted);
}

TEST(Tolerance, ReportedErrorIsHonest) {
    EvaluatorConfig cfg;
    cfg.tol_rel = 1e-6;
    const auto o = k_oscillatory_thm13(0.25, 1.0, 3.0, cfg);
    EXPECT_LE(o.relative_error(), 1e-6);
    EXPECT_LE(relative_difference(o.value, frozen(kMu1_r025_y3)), 1e-6);
}
