#include <gtest/gtest.h>

#include "bessel_sd/dispatch.hpp"

using namespace bessel_sd;

TEST(Dispatch, ParseMethod) {
    EXPECT_EQ(parse_method("thm13"), Method::thm13);
    EXPECT_EQ(parse_method("steepest"), Method::steepest_monotonic);
    EXPECT_EQ(parse_method("steepest_monotonic"), Method::steepest_monotonic);
    EXPECT_FALSE(parse_method("fast").has_value());
    for (Method m : {Method::direct, Method::series, Method::prop33, Method::asym_monotonic, Method::asym_oscillatory})
        EXPECT_EQ(parse_method(to_string(m)), m);
}

TEST(Dispatch, DefaultMethod) {
    EXPECT_EQ(default_method(RegimeSpec::monotonic(1.0, 0.3)), Method::steepest_monotonic);
    EXPECT_EQ(default_method(RegimeSpec::oscillatory(1.0, 0.3)), Method::thm13);
}

TEST(Dispatch, RegimeMismatchRejected) {
    EXPECT_THROW((void)evaluate(0.0, RegimeSpec::monotonic(1.0, 0.3), Method::thm13), domain_error);
    EXPECT_THROW((void)evaluate(0.0, RegimeSpec::oscillatory(1.0, 0.3), Method::steepest_monotonic), domain_error);
    EXPECT_THROW((void)evaluate(0.0, RegimeSpec::oscillatory(1.0, 0.3), Method::asym_monotonic), domain_error);
}

TEST(Dispatch, NegativeImaginaryPartConjugates) {
    const auto plus = evaluate(OrderSpec{0.3, 5.0}, 2.0);
    const auto minus = evaluate(OrderSpec{0.3, -5.0}, 2.0);
    EXPECT_FALSE(plus.conjugated);
    EXPECT_TRUE(minus.conjugated);
    EXPECT_LE(relative_difference(minus.value, plus.value.conj()), 1e-15);
}

TEST(Dispatch, MonotonicConjugation) {
    const auto plus = evaluate(OrderSpec{0.5, 3.0}, 5.0, Method::steepest_monotonic);
    const auto minus = evaluate(OrderSpec{0.5, -3.0}, 5.0, Method::steepest_monotonic);
    EXPECT_LE(relative_difference(minus.value, plus.value.conj()), 1e-15);
}

TEST(Dispatch, AsymptoticMethodsCarryNoError) {
    const auto o = evaluate(0.0, RegimeSpec::oscillatory(50.0, 1.0), Method::asym_oscillatory);
    EXPECT_EQ(o.method, Method::asym_oscillatory);
    EXPECT_EQ(o.abs_error_scaled, 0.0);
}

TEST(Dispatch, AllMethodsAgreeAtModerateArgument) {
    const auto regime = RegimeSpec::oscillatory(3.0, 0.4);
    const auto ref = evaluate(0.1, regime, Method::series);
    for (Method m : {Method::direct, Method::thm13, Method::prop33})
        EXPECT_LE(relative_difference(evaluate(0.1, regime, m).value, ref.value), 1e-11) << to_string(m);
}
