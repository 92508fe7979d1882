// Relative residual of the leading asymptotic term as y grows, theta = pi/4.
#include <cstdio>
#include <numbers>

#include "bessel_sd/bessel_sd.hpp"

int main() {
    using namespace bessel_sd;
    const double theta = std::numbers::pi / 4, r = 0.5;
    for (double y : {10.0, 20.0, 50.0, 100.0, 200.0, 400.0}) {
        const auto regime = RegimeSpec::monotonic(y, theta);
        const auto exact = evaluate(r, regime, Method::steepest_monotonic);
        std::printf("y = %6.1f  log|K| = %+.12f  residual = %.3e\n", y, exact.value.log_abs(),
                    residual_monotonic(r, theta, y, exact));
    }
}
