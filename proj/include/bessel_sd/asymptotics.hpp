#pragma once

#include <cmath>
#include <complex>

#include "bessel_sd/contour.hpp"
#include "bessel_sd/core_types.hpp"
#include "bessel_sd/errors.hpp"
#include "bessel_sd/log_gamma.hpp"
#include "bessel_sd/scaled_complex.hpp"

namespace bessel_sd {

/**
 * @brief Leading-order approximation of K_nu(y).
 *
 * prefactor_scale is log of the modulus of the prefactor (the full smooth
 * factor, y-power included). In the oscillatory regime value = prefactor *
 * bracket; in the monotonic regime bracket is 1.
 */
struct AsymptoticValue {
    ScaledComplex value;
    double prefactor_scale = 0.0;
    std::complex<double> bracket{1.0, 0.0};
};

/// sqrt(pi / (2 y cos theta)) e^{-y (cos theta + theta sin theta)} e^{i r theta}, or the Airy-type form at theta == pi/2.
[[nodiscard]] inline AsymptoticValue asym_monotonic(double r, double theta, double y) {
    if (!(y > 0.0)) throw domain_error("argument y must be positive");
    if (!(theta >= 0.0 && theta <= kHalfPi)) throw domain_error("asym_monotonic requires 0 <= theta <= pi/2");
    AsymptoticValue out;
    if (theta == kHalfPi) {
        out.prefactor_scale = -kHalfPi * y - std::log(y) / 3.0 + std::log(kGammaOneThird) - (2.0 / 3.0) * std::log(2.0) -
                              std::log(3.0) / 6.0;
        out.value = ScaledComplex::from_log({out.prefactor_scale, kHalfPi * r});
        return out;
    }
    const double c = std::cos(theta);
    out.prefactor_scale = 0.5 * std::log(kPi / (2.0 * y * c)) - y * (c + theta * std::sin(theta));
    out.value = ScaledComplex::from_log({out.prefactor_scale, r * theta});
    return out;
}

/// cosh(r mu) sin(pi/4 - chi) - i sinh(r mu) cos(pi/4 - chi)
[[nodiscard]] inline std::complex<double> oscillatory_bracket(double r, double mu, double chi) {
    const double a = kPi / 4.0 - chi;
    return {std::cosh(r * mu) * std::sin(a), -std::sinh(r * mu) * std::cos(a)};
}

/// sqrt(2 pi / (y sinh mu)) e^{-y (pi/2) cosh mu + i r pi/2} times the oscillatory bracket.
[[nodiscard]] inline AsymptoticValue asym_oscillatory(double r, double mu, double y) {
    if (!(y > 0.0)) throw domain_error("argument y must be positive");
    if (!(mu > 0.0)) throw domain_error("asym_oscillatory requires mu > 0");
    AsymptoticValue out;
    out.prefactor_scale = 0.5 * std::log(kTwoPi / (y * std::sinh(mu))) - y * kHalfPi * std::cosh(mu);
    out.bracket = oscillatory_bracket(r, mu, contour::chi(y, mu));
    out.value = ScaledComplex::from_log({out.prefactor_scale, kHalfPi * r}) * out.bracket;
    return out;
}

/// |exact / asym - 1|
[[nodiscard]] inline double residual_monotonic(double r, double theta, double y, const EvalOutcome& exact) {
    const auto a = asym_monotonic(r, theta, y);
    return relative_difference(exact.value, a.value);
}

/// |exact - asym| / (|prefactor| cosh(|r| mu))
[[nodiscard]] inline double residual_oscillatory(double r, double mu, double y, const EvalOutcome& exact) {
    const auto a = asym_oscillatory(r, mu, y);
    const auto diff = exact.value - a.value;
    if (diff.is_zero()) return 0.0;
    return std::exp(diff.log_abs() - a.prefactor_scale - std::log(std::cosh(std::abs(r) * mu)));
}

/// exact / (prefactor e^{i r pi/2}), directly comparable with AsymptoticValue::bracket.
[[nodiscard]] inline std::complex<double> exact_bracket(double r, double mu, double y, const EvalOutcome& exact) {
    const auto a = asym_oscillatory(r, mu, y);
    const auto unit = ScaledComplex::from_log({a.prefactor_scale, kHalfPi * r});
    return (exact.value / unit).to_complex();
}

} // namespace bessel_sd
