#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "bessel_sd/core_types.hpp"
#include "bessel_sd/errors.hpp"

namespace bessel_sd {

/// Gamma(1/3) to 20 significant digits.
inline constexpr double kGammaOneThird = 2.6789385347077476337;

namespace detail {

/// B_{2k} / (2k (2k - 1)) for k = 1..8
inline constexpr std::array<double, 8> kStirlingCoefficients = {
    1.0 / 12.0,          -1.0 / 360.0,         1.0 / 1260.0,       -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0,    1.0 / 156.0,        -3617.0 / 122400.0};

[[nodiscard]] inline std::complex<double> log_gamma_stirling(std::complex<double> z) {
    const std::complex<double> inv = 1.0 / z;
    const std::complex<double> inv2 = inv * inv;
    std::complex<double> series{};
    std::complex<double> power = inv;
    for (double c : kStirlingCoefficients) {
        series += c * power;
        power *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(kTwoPi) + series;
}

} // namespace detail

/**
 * @brief log sin(pi z) for complex z, without overflow for large |Im z|.
 *
 * The imaginary part is determined modulo 2 pi.
 */
[[nodiscard]] inline std::complex<double> log_sin_pi(std::complex<double> z) {
    using C = std::complex<double>;
    // sin(pi z) has period 2 in Re z
    const double re = z.real() - 2.0 * std::round(0.5 * z.real());
    const C zr(re, z.imag());
    if (std::abs(z.imag()) < 5.0) {
        const C s = std::sin(kPi * zr);
        if (s == C(0.0, 0.0)) throw domain_error("sin(pi z) vanishes at an integer");
        return std::log(s);
    }
    const C i(0.0, 1.0);
    if (z.imag() > 0.0) {
        // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i)
        return -i * kPi * zr + std::log(std::exp(2.0 * i * kPi * zr) - 1.0) - std::log(2.0 * i);
    }
    // sin(pi z) = e^{i pi z} (1 - e^{-2 i pi z}) / (2i)
    return i * kPi * zr + std::log(1.0 - std::exp(-2.0 * i * kPi * zr)) - std::log(2.0 * i);
}

/**
 * @brief log Gamma(z) for complex z off the nonpositive integers.
 *
 * Re z >= 1/2 gives the principal branch (continuous from the positive real
 * axis) via upward recurrence and the Stirling series; Re z < 1/2 uses the
 * reflection formula and is determined modulo 2 pi i, which is all that
 * exp() consumers need.
 */
[[nodiscard]] inline std::complex<double> complex_log_gamma(std::complex<double> z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw domain_error("log_gamma argument is not finite");
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw domain_error("log_gamma pole at a nonpositive integer");
    if (z.real() < 0.5) return std::log(kPi) - log_sin_pi(z) - complex_log_gamma(1.0 - z);

    constexpr double kThreshold = 15.0;
    std::complex<double> shift{};
    while (std::abs(z) < kThreshold) {
        shift += std::log(z);
        z += 1.0;
    }
    return detail::log_gamma_stirling(z) - shift;
}

} // namespace bessel_sd
