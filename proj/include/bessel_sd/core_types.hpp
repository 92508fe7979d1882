#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string_view>
#include <variant>

#include "bessel_sd/errors.hpp"
#include "bessel_sd/scaled_complex.hpp"

namespace bessel_sd {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2;
inline constexpr double kThreeHalfPi = 3 * (std::numbers::pi / 2);
inline constexpr double kTwoPi = 2 * std::numbers::pi;

/// Order nu = r + i t. Negative t is folded to |t| at the API boundary and the
/// result conjugated, since K_{conj nu}(y) = conj K_nu(y) for real y > 0.
struct OrderSpec {
    double r = 0.0;
    double t = 0.0;

    [[nodiscard]] std::complex<double> nu() const noexcept { return {r, t}; }
    [[nodiscard]] bool needs_conjugation() const noexcept { return t < 0.0; }
    [[nodiscard]] OrderSpec folded() const noexcept { return {r, std::abs(t)}; }
    [[nodiscard]] OrderSpec negated() const noexcept { return {-r, -t}; }
};

/// t = y sin(theta), 0 <= theta <= pi/2.
struct Monotonic {
    double theta = 0.0;
};

/// t = y cosh(mu), mu > 0.
struct Oscillatory {
    double mu = 0.0;
};

/**
 * @brief Regime parametrization of (y, t).
 *
 * theta and mu are stored rather than recomputed from t / y so that the
 * boundary theta == pi/2 and small mu survive unchanged.
 */
class RegimeSpec {
public:
    static RegimeSpec monotonic(double y, double theta) {
        check_y(y);
        if (!(theta >= 0.0 && theta <= kHalfPi))
            throw domain_error("monotonic regime requires 0 <= theta <= pi/2");
        return RegimeSpec(y, Monotonic{theta});
    }

    static RegimeSpec oscillatory(double y, double mu) {
        check_y(y);
        if (!(mu > 0.0) || !std::isfinite(mu))
            throw domain_error("oscillatory regime requires mu > 0");
        return RegimeSpec(y, Oscillatory{mu});
    }

    [[nodiscard]] double y() const noexcept { return y_; }
    [[nodiscard]] bool is_monotonic() const noexcept { return std::holds_alternative<Monotonic>(param_); }
    [[nodiscard]] bool is_oscillatory() const noexcept { return !is_monotonic(); }
    [[nodiscard]] double theta() const { return std::get<Monotonic>(param_).theta; }
    [[nodiscard]] double mu() const { return std::get<Oscillatory>(param_).mu; }

    /// Exact comparison: only theta constructed as pi/2 (e.g. from t == y) selects the boundary.
    [[nodiscard]] bool is_boundary() const noexcept {
        return is_monotonic() && std::get<Monotonic>(param_).theta == kHalfPi;
    }

    [[nodiscard]] double t() const noexcept {
        if (is_monotonic()) return y_ * std::sin(std::get<Monotonic>(param_).theta);
        return y_ * std::cosh(std::get<Oscillatory>(param_).mu);
    }

    [[nodiscard]] const std::variant<Monotonic, Oscillatory>& param() const noexcept { return param_; }

private:
    RegimeSpec(double y, std::variant<Monotonic, Oscillatory> p) : param_(p), y_(y) {}

    static void check_y(double y) {
        if (!(y > 0.0) || !std::isfinite(y)) throw domain_error("argument y must be positive and finite");
    }

    std::variant<Monotonic, Oscillatory> param_;
    double y_;
};

/// t <= y maps to Monotonic{asin(t/y)}, t > y to Oscillatory{acosh(t/y)}.
[[nodiscard]] inline RegimeSpec regime_from_physical(double y, double t) {
    if (!(y > 0.0) || !std::isfinite(y)) throw domain_error("argument y must be positive and finite");
    if (!(t >= 0.0) || !std::isfinite(t)) throw domain_error("regime_from_physical expects t >= 0");
    if (t <= y) return RegimeSpec::monotonic(y, t == y ? kHalfPi : std::asin(t / y));
    return RegimeSpec::oscillatory(y, std::acosh(t / y));
}

enum class Method {
    direct,
    series,
    steepest_monotonic,
    thm13,
    prop33,
    asym_monotonic,
    asym_oscillatory,
};

[[nodiscard]] constexpr std::string_view to_string(Method m) noexcept {
    switch (m) {
    case Method::direct: return "direct";
    case Method::series: return "series";
    case Method::steepest_monotonic: return "steepest";
    case Method::thm13: return "thm13";
    case Method::prop33: return "prop33";
    case Method::asym_monotonic: return "asym_monotonic";
    case Method::asym_oscillatory: return "asym_oscillatory";
    }
    return "unknown";
}

/**
 * @brief Result of one evaluation of K_nu(y).
 *
 * abs_error_scaled is expressed in the frame of value.log_scale(), i.e. the
 * absolute error bound is abs_error_scaled * exp(value.log_scale()).
 */
struct EvalOutcome {
    ScaledComplex value;
    double abs_error_scaled = 0.0;
    int evaluations = 1;
    Method method = Method::direct;
    bool conjugated = false;     ///< result was obtained at |t| and conjugated
    bool near_boundary = false;  ///< theta within 1e-6 of pi/2 without being exactly pi/2

    [[nodiscard]] double relative_error() const noexcept {
        const double m = std::abs(value.mantissa());
        return m == 0.0 ? abs_error_scaled : abs_error_scaled / m;
    }
};

struct EvaluatorConfig {
    double tol_rel = 1e-12;
    int max_evals = 4'000'000;
    /// Added to chi inside the oscillatory evaluators and asymptotics. Fault injection only.
    double chi_offset = 0.0;

    void validate() const {
        if (!(tol_rel > 0.0 && tol_rel < 1.0)) throw domain_error("tol_rel must lie in (0, 1)");
        if (max_evals < 15) throw domain_error("max_evals must allow at least one rule application");
    }
};

inline constexpr double kNearBoundaryWindow = 1e-6;

[[nodiscard]] inline bool theta_near_boundary(double theta) noexcept {
    return theta != kHalfPi && std::abs(theta - kHalfPi) < kNearBoundaryWindow;
}

} // namespace bessel_sd
