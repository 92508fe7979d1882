#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace bessel_sd {

/**
 * @brief Complex number stored as mantissa * exp(log_scale).
 *
 * Values such as K_{r+it}(y) ~ exp(-pi t / 2) leave the double range long
 * before the interesting asymptotic regime is reached, so every evaluator in
 * this library reports its result in this form. The frame uses the natural
 * logarithm.
 *
 * After normalize(), |mantissa| lies in [1, e), or mantissa == 0 together
 * with log_scale == 0.
 */
class ScaledComplex {
public:
    using complex = std::complex<double>;

    constexpr ScaledComplex() = default;

    /// Unnormalized construction; call normalized() if the invariant is needed.
    constexpr ScaledComplex(complex mantissa, double log_scale)
        : mantissa_(mantissa), log_scale_(log_scale) {}

    static ScaledComplex from_complex(complex z) { return ScaledComplex(z, 0.0).normalized(); }

    /// exp(log_value), with the real part kept out of the mantissa.
    static ScaledComplex from_log(complex log_value) {
        const double im = log_value.imag();
        return ScaledComplex(complex(std::cos(im), std::sin(im)), log_value.real()).normalized();
    }

    [[nodiscard]] constexpr complex mantissa() const noexcept { return mantissa_; }
    [[nodiscard]] constexpr double log_scale() const noexcept { return log_scale_; }

    [[nodiscard]] bool is_zero() const noexcept { return mantissa_ == complex(0.0, 0.0); }
    [[nodiscard]] bool is_finite() const noexcept {
        return std::isfinite(mantissa_.real()) && std::isfinite(mantissa_.imag()) &&
               std::isfinite(log_scale_);
    }

    /// log|z|; -infinity for zero.
    [[nodiscard]] double log_abs() const noexcept {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log(std::abs(mantissa_)) + log_scale_;
    }

    /// Principal argument in (-pi, pi].
    [[nodiscard]] double arg() const noexcept {
        const double a = std::arg(mantissa_);
        return a == -std::numbers::pi ? std::numbers::pi : a;
    }

    /// Plain complex value; underflows to zero or overflows to infinity outside the double range.
    [[nodiscard]] complex to_complex() const noexcept {
        if (is_zero()) return {};
        return mantissa_ * std::exp(log_scale_);
    }

    /// Same value expressed with the given log_scale (mantissa may leave [1, e)).
    [[nodiscard]] ScaledComplex in_frame(double log_scale) const noexcept {
        if (is_zero()) return ScaledComplex(complex{}, log_scale);
        return ScaledComplex(mantissa_ * std::exp(log_scale_ - log_scale), log_scale);
    }

    [[nodiscard]] ScaledComplex normalized() const noexcept {
        ScaledComplex out = *this;
        out.normalize();
        return out;
    }

    void normalize() noexcept {
        const double m = std::abs(mantissa_);
        if (m == 0.0) {
            mantissa_ = {};
            log_scale_ = 0.0;
            return;
        }
        if (!std::isfinite(m) || !std::isfinite(log_scale_)) return;
        const double shift = std::floor(std::log(m));
        if (shift != 0.0) {
            mantissa_ *= std::exp(-shift);
            log_scale_ += shift;
        }
        // log() and exp() may leave |mantissa| one ulp outside [1, e)
        const double mm = std::abs(mantissa_);
        if (mm >= std::numbers::e) {
            mantissa_ /= std::numbers::e;
            log_scale_ += 1.0;
        } else if (mm < 1.0) {
            mantissa_ *= std::numbers::e;
            log_scale_ -= 1.0;
        }
    }

    [[nodiscard]] ScaledComplex conj() const noexcept {
        return ScaledComplex(std::conj(mantissa_), log_scale_);
    }

    ScaledComplex operator-() const noexcept { return ScaledComplex(-mantissa_, log_scale_); }

    ScaledComplex& operator*=(const ScaledComplex& o) noexcept {
        mantissa_ *= o.mantissa_;
        log_scale_ += o.log_scale_;
        normalize();
        return *this;
    }
    ScaledComplex& operator*=(complex z) noexcept {
        mantissa_ *= z;
        normalize();
        return *this;
    }
    ScaledComplex& operator/=(const ScaledComplex& o) noexcept {
        mantissa_ /= o.mantissa_;
        log_scale_ -= o.log_scale_;
        normalize();
        return *this;
    }

    friend ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) noexcept { return a *= b; }
    friend ScaledComplex operator*(ScaledComplex a, complex z) noexcept { return a *= z; }
    friend ScaledComplex operator*(complex z, ScaledComplex a) noexcept { return a *= z; }
    friend ScaledComplex operator/(ScaledComplex a, const ScaledComplex& b) noexcept { return a /= b; }

    friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) noexcept;
    friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) noexcept {
        return a + (-b);
    }

private:
    complex mantissa_{};
    double log_scale_ = 0.0;
};

/// Sum in the frame of the larger log_scale; exact cancellation yields the normalized zero.
[[nodiscard]] inline ScaledComplex scaled_add(const ScaledComplex& a, const ScaledComplex& b) noexcept {
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    const double frame = std::max(a.log_scale(), b.log_scale());
    const auto sum = a.in_frame(frame).mantissa() + b.in_frame(frame).mantissa();
    return ScaledComplex(sum, frame).normalized();
}

inline ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) noexcept {
    return scaled_add(a, b);
}

/// |a - b| / |b| evaluated without leaving the scaled frame.
[[nodiscard]] inline double relative_difference(const ScaledComplex& a, const ScaledComplex& b) noexcept {
    const double frame = b.log_scale();
    const auto diff = a.in_frame(frame).mantissa() - b.mantissa();
    return std::abs(diff) / std::abs(b.mantissa());
}

} // namespace bessel_sd
