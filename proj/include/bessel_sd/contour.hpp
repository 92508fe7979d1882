#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "bessel_sd/core_types.hpp"
#include "bessel_sd/errors.hpp"

namespace bessel_sd::contour {

using complex = std::complex<double>;

enum class Branch { mono_main, arc_lower, arc_upper, tail };

[[nodiscard]] constexpr std::string_view to_string(Branch b) noexcept {
    switch (b) {
    case Branch::mono_main: return "mono_main";
    case Branch::arc_lower: return "arc_lower";
    case Branch::arc_upper: return "arc_upper";
    case Branch::tail: return "tail";
    }
    return "unknown";
}

/// Which one-sided limit to take where the slope jumps (theta == pi/2, u == 0).
enum class Side { plus, minus };

/// A point R = u + i w on a steepest-descent curve. An empty dw_du marks a vertical tangent.
struct ContourPoint {
    double u = 0.0;
    double w = 0.0;
    std::optional<double> dw_du;
    Branch branch = Branch::mono_main;

    [[nodiscard]] bool vertical() const noexcept { return !dw_du.has_value(); }
    /// du/dw; zero at a vertical tangent.
    [[nodiscard]] double du_dw() const noexcept { return dw_du ? 1.0 / *dw_du : 0.0; }
    [[nodiscard]] complex position() const noexcept { return {u, w}; }
};

namespace detail {

/// sinh(x) - x without cancellation for small |x|.
[[nodiscard]] inline double sinh_minus_x(double x) noexcept {
    if (std::abs(x) >= 1.0) return std::sinh(x) - x;
    const double x2 = x * x;
    double term = x * x2 / 6.0;
    double sum = term;
    for (int k = 2; k < 12; ++k) {
        term *= x2 / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

/// x cosh(x) - sinh(x) without cancellation for small |x|.
[[nodiscard]] inline double x_cosh_minus_sinh(double x) noexcept {
    if (std::abs(x) >= 1.0) return x * std::cosh(x) - std::sinh(x);
    // sum_k 2k x^{2k+1} / (2k+1)!
    const double x2 = x * x;
    double power = x * x2 / 6.0; // x^{2k+1}/(2k+1)! at k = 1
    double sum = 2.0 * power;
    for (int k = 2; k < 12; ++k) {
        power *= x2 / ((2.0 * k) * (2.0 * k + 1.0));
        const double term = 2.0 * k * power;
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

/// x / sinh(x), even, equal to 1 at 0; Taylor series through x^6 for |x| < 1e-2.
[[nodiscard]] inline double x_over_sinh(double x) noexcept {
    const double a = std::abs(x);
    if (a < 1e-2) {
        const double a2 = a * a;
        return 1.0 + a2 * (-1.0 / 6.0 + a2 * (7.0 / 360.0 - a2 * (31.0 / 15120.0)));
    }
    if (a > 700.0) return 0.0;
    return a / std::sinh(a);
}

/// 1 - sin(w), accurate near w = pi/2.
[[nodiscard]] inline double one_minus_sin(double w) noexcept {
    const double h = std::sin(0.5 * (kHalfPi - w));
    return 2.0 * h * h;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Saddle points
// ---------------------------------------------------------------------------

/// i((-1)^k theta + k pi): zeros of d/dR [cosh R - i R sin(theta)].
[[nodiscard]] inline complex saddle_monotonic(double theta, int k) {
    if (!(theta >= 0.0 && theta <= kHalfPi)) throw domain_error("saddle_monotonic requires 0 <= theta <= pi/2");
    const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
    // one rounding of the exact ordinate keeps |phi'| at the half-ulp level for |k| > 0
    return {0.0, static_cast<double>(sign * theta + k * std::numbers::pi_v<long double>)};
}

/// sign*mu + i(pi/2 + 2 k pi): zeros of d/dR [cosh R - i R cosh(mu)].
[[nodiscard]] inline complex saddle_oscillatory(double mu, int k, int sign) {
    if (!(mu > 0.0)) throw domain_error("saddle_oscillatory requires mu > 0");
    if (sign != 1 && sign != -1) throw domain_error("saddle sign must be +1 or -1");
    return {sign * mu, static_cast<double>((4.0L * k + 1.0L) * (std::numbers::pi_v<long double> / 2.0L))};
}

[[nodiscard]] inline complex phase_derivative_monotonic(double theta, complex R) {
    return std::sinh(R) - complex(0.0, std::sin(theta));
}

[[nodiscard]] inline complex phase_derivative_oscillatory(double mu, complex R) {
    return std::sinh(R) - complex(0.0, std::cosh(mu));
}

// ---------------------------------------------------------------------------
// Monotonic regime: w = arcsin(sin(theta) u / sinh u)
// ---------------------------------------------------------------------------

class MonotonicContour {
public:
    explicit MonotonicContour(double theta)
        : theta_(theta), sin_(std::sin(theta)), cos_(std::cos(theta)),
          one_minus_sin_(detail::one_minus_sin(theta)) {
        if (!(theta >= 0.0 && theta <= kHalfPi)) throw domain_error("monotonic contour requires 0 <= theta <= pi/2");
    }

    [[nodiscard]] double theta() const noexcept { return theta_; }
    [[nodiscard]] bool boundary() const noexcept { return theta_ == kHalfPi; }

    [[nodiscard]] double w(double u) const noexcept { return solve(u).w; }

    /// Implicit slope (sin(theta) - sin w cosh u) / (cos w sinh u), with the limits at u = 0.
    [[nodiscard]] double dw_du(double u, Side side = Side::plus) const noexcept {
        const auto geo = solve(u);
        const double a = std::abs(u);
        if (u == 0.0 || geo.cos_w == 0.0) {
            if (!boundary()) return 0.0;
            return side == Side::plus ? -1.0 / std::sqrt(3.0) : 1.0 / std::sqrt(3.0);
        }
        // (a cosh a - sinh a) / sinh^2 a
        double g;
        if (a < 1.0) {
            const double sh = std::sinh(a);
            g = detail::x_cosh_minus_sinh(a) / (sh * sh);
        } else {
            g = (a / std::tanh(a) - 1.0) / std::sinh(a);
        }
        const double slope = -sin_ * g / geo.cos_w;
        return u > 0.0 ? slope : -slope;
    }

    [[nodiscard]] ContourPoint point(double u, Side side = Side::plus) const noexcept {
        return {u, w(u), dw_du(u, side), Branch::mono_main};
    }

    /// cosh u cos w + w sin(theta) minus its saddle value cos(theta) + theta sin(theta).
    [[nodiscard]] double height_excess(const ContourPoint& p) const noexcept {
        return std::cosh(p.u) * std::cos(p.w) - cos_ + (p.w - theta_) * sin_;
    }

    [[nodiscard]] double height(const ContourPoint& p) const noexcept {
        return std::cosh(p.u) * std::cos(p.w) + p.w * sin_;
    }

    /// Im(-phi) = -sinh u sin w + u sin(theta); zero at the saddle i theta.
    [[nodiscard]] double im_phase(const ContourPoint& p) const noexcept {
        return -std::sinh(p.u) * std::sin(p.w) + p.u * sin_;
    }

    [[nodiscard]] double saddle_height() const noexcept { return cos_ + theta_ * sin_; }

private:
    struct Geo {
        double w;
        double cos_w;
    };

    [[nodiscard]] Geo solve(double u) const noexcept {
        if (u == 0.0) return {theta_, cos_};
        const double a = std::abs(u);
        const double s = sin_ * detail::x_over_sinh(a);
        double d;
        if (s < 0.5) {
            d = 1.0 - s;
        } else {
            // 1 - s = (sinh a - a + a (1 - sin theta)) / sinh a
            d = (detail::sinh_minus_x(a) + a * one_minus_sin_) / std::sinh(a);
        }
        const double cw = std::sqrt(std::max(0.0, d * (2.0 - d)));
        return {std::atan2(s, cw), cw};
    }

    double theta_;
    double sin_;
    double cos_;
    double one_minus_sin_;
};

[[nodiscard]] inline double path_w_monotonic(double theta, double u) { return MonotonicContour(theta).w(u); }

[[nodiscard]] inline double path_dw_du_monotonic(double theta, double u, Side side = Side::plus) {
    return MonotonicContour(theta).dw_du(u, side);
}

// ---------------------------------------------------------------------------
// Oscillatory regime: sin w sinh u = cosh(mu) u + sinh(mu) - mu cosh(mu)
// ---------------------------------------------------------------------------

namespace detail {

/// Unique root in (0, mu) of sinh u + u cosh(mu) + sinh(mu) - mu cosh(mu).
[[nodiscard]] inline double solve_mu_minus(double mu, double cosh_mu, double c) {
    auto f = [&](double u) { return std::sinh(u) + u * cosh_mu + c; };
    double lo = 0.0;
    double hi = mu;
    while (hi - lo > 1e-8 * (1.0 + mu)) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    double u = 0.5 * (lo + hi);
    for (int it = 0; it < 50; ++it) {
        const double fu = f(u);
        if (fu == 0.0) break;
        (fu < 0.0 ? lo : hi) = u;
        double next = u - fu / (std::cosh(u) + cosh_mu);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - u);
        u = next;
        if (step <= 2.0 * std::numeric_limits<double>::epsilon() * u) break;
    }
    return u;
}

} // namespace detail

/**
 * @brief Steepest-descent geometry through the saddle mu + i pi/2.
 *
 * Three pieces of the curve are exposed:
 *   - tail:      u in [mu, inf),   w from pi/2 down to 0
 *   - arc_upper: w in [pi/2, 3pi/2], u from mu down to mu_minus
 *   - arc_lower: w in [-pi/2, pi/2], u from mu_minus up to mu
 * arc_lower is the 2pi-shifted copy of the piece w in [3pi/2, 5pi/2].
 */
class Case2Contour {
public:
    explicit Case2Contour(double mu) : mu_(mu) {
        if (!(mu > 0.0) || !std::isfinite(mu)) throw domain_error("oscillatory contour requires mu > 0");
        cosh_ = std::cosh(mu);
        sinh_ = std::sinh(mu);
        c_ = -detail::x_cosh_minus_sinh(mu);
        mu_minus_ = detail::solve_mu_minus(mu, cosh_, c_);
    }

    [[nodiscard]] double mu() const noexcept { return mu_; }
    [[nodiscard]] double mu_minus() const noexcept { return mu_minus_; }
    [[nodiscard]] double cosh_mu() const noexcept { return cosh_; }
    [[nodiscard]] double sinh_mu() const noexcept { return sinh_; }
    /// sinh(mu) - mu cosh(mu) < 0
    [[nodiscard]] double offset() const noexcept { return c_; }
    /// psi at the saddle, (pi/2) cosh(mu)
    [[nodiscard]] double psi_saddle() const noexcept { return kHalfPi * cosh_; }

    [[nodiscard]] ContourPoint saddle(Branch b) const noexcept {
        const double slope = b == Branch::arc_lower ? 1.0 : -1.0;
        return {mu_, kHalfPi, slope, b};
    }

    [[nodiscard]] ContourPoint tail(double u) const {
        if (!(u >= mu_)) throw domain_error("tail branch requires u >= mu");
        const double rho = u - mu_;
        if (rho == 0.0) return saddle(Branch::tail);
        if (u > 700.0) return {u, 0.0, 0.0, Branch::tail};
        const double sh = std::sinh(u);
        const double s_direct = (u * cosh_ + c_) / sh;
        double d = rho < 20.0 ? n_of_rho(rho) / sh : 1.0 - s_direct;
        const double s = d < 0.5 ? 1.0 - d : s_direct;
        if (d >= 0.5) d = 1.0 - s_direct;
        const double cw = std::sqrt(std::max(0.0, d * (2.0 - d)));
        double slope;
        if (rho < 20.0) {
            const double num = -2.0 * std::sinh(0.5 * (u + mu_)) * std::sinh(0.5 * rho) + d * std::cosh(u);
            slope = num / (sh * cw);
        } else {
            slope = (cosh_ / sh - s / std::tanh(u)) / cw;
        }
        return {u, std::atan2(s, cw), slope, Branch::tail};
    }

    /// arc_upper parametrized by the offset from its left end, u = mu_minus + offset.
    [[nodiscard]] ContourPoint arc_upper_offset(double offset) const {
        if (!(offset >= 0.0)) throw domain_error("arc_upper offset must be nonnegative");
        if (offset == 0.0) return {mu_minus_, kThreeHalfPi, std::nullopt, Branch::arc_upper};
        const double u = mu_minus_ + offset;
        const double rho = u - mu_;
        if (rho >= 0.0) return saddle(Branch::arc_upper);
        const double sh = std::sinh(u);
        const double one_minus_s = n_of_rho(rho) / sh;
        // sinh u + u cosh(mu) + c expanded about its root mu_minus
        const double one_plus_s =
            (2.0 * std::cosh(mu_minus_ + 0.5 * offset) * std::sinh(0.5 * offset) + offset * cosh_) / sh;
        const double s = one_minus_s < one_plus_s ? 1.0 - one_minus_s : one_plus_s - 1.0;
        const double cw = -std::sqrt(one_minus_s * one_plus_s);
        double w = std::atan2(s, cw);
        if (w < 0.0) w += kTwoPi;
        if (cw == 0.0) return {u, w, std::nullopt, Branch::arc_upper};
        const double num = -2.0 * std::sinh(0.5 * (u + mu_)) * std::sinh(0.5 * rho) + one_minus_s * std::cosh(u);
        return {u, w, num / (sh * cw), Branch::arc_upper};
    }

    [[nodiscard]] ContourPoint arc_upper_by_u(double u) const {
        if (!(u >= mu_minus_ && u <= mu_)) throw domain_error("arc_upper requires mu_minus <= u <= mu");
        return arc_upper_offset(u - mu_minus_);
    }

    [[nodiscard]] ContourPoint arc_upper(double w) const {
        if (!(w >= kHalfPi && w <= kThreeHalfPi)) throw domain_error("arc_upper requires pi/2 <= w <= 3pi/2");
        return arc_by_w(w, Branch::arc_upper);
    }

    [[nodiscard]] ContourPoint arc_lower(double w) const {
        if (!(w >= -kHalfPi && w <= kHalfPi)) throw domain_error("arc_lower requires -pi/2 <= w <= pi/2");
        return arc_by_w(w, Branch::arc_lower);
    }

    [[nodiscard]] double psi(const ContourPoint& p) const noexcept {
        return std::cosh(p.u) * std::cos(p.w) + p.w * cosh_;
    }

    /// psi - (pi/2) cosh(mu), grouped so the saddle cancellation stays benign.
    [[nodiscard]] double psi_excess(const ContourPoint& p) const noexcept {
        return std::cosh(p.u) * std::cos(p.w) + (p.w - kHalfPi) * cosh_;
    }

    /// Im(-phi) - Im(-phi(saddle)) = -sinh u sin w + (u - mu) cosh(mu) + sinh(mu).
    [[nodiscard]] double im_phase_offset(const ContourPoint& p) const noexcept {
        return -std::sinh(p.u) * std::sin(p.w) + (p.u - mu_) * cosh_ + sinh_;
    }

    /// sin w sinh u - (cosh(mu) u + sinh(mu) - mu cosh(mu)).
    [[nodiscard]] double branch_residual(const ContourPoint& p) const noexcept {
        return std::sin(p.w) * std::sinh(p.u) - (cosh_ * p.u + c_);
    }

private:
    /// sinh(mu + rho) - sinh(mu) - rho cosh(mu)
    [[nodiscard]] double n_of_rho(double rho) const noexcept {
        const double h = std::sinh(0.5 * rho);
        return 2.0 * sinh_ * h * h + cosh_ * detail::sinh_minus_x(rho);
    }

    /// Root rho in [mu_minus - mu, 0] of N(rho) - d sinh(mu + rho), d = 1 - sin w.
    [[nodiscard]] double solve_rho(double d) const noexcept {
        const double lo0 = mu_minus_ - mu_;
        if (d <= 0.0) return 0.0;
        if (d >= 2.0) return lo0;
        auto h = [&](double rho) { return n_of_rho(rho) - d * std::sinh(mu_ + rho); };
        auto dh = [&](double rho) {
            return 2.0 * std::sinh(mu_ + 0.5 * rho) * std::sinh(0.5 * rho) - d * std::cosh(mu_ + rho);
        };
        double lo = lo0; // h >= 0
        double hi = 0.0; // h <= 0
        while (hi - lo > 1e-8) {
            const double mid = 0.5 * (lo + hi);
            (h(mid) > 0.0 ? lo : hi) = mid;
        }
        double rho = 0.5 * (lo + hi);
        for (int it = 0; it < 100; ++it) {
            const double hv = h(rho);
            if (hv == 0.0) break;
            (hv > 0.0 ? lo : hi) = rho;
            const double dv = dh(rho);
            double next = dv != 0.0 ? rho - hv / dv : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            const double step = std::abs(next - rho);
            rho = next;
            if (step <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(rho) || hi - lo == 0.0) break;
        }
        return rho;
    }

    [[nodiscard]] ContourPoint arc_by_w(double w, Branch b) const {
        if (w == kHalfPi) return saddle(b);
        if (w == -kHalfPi || w == kThreeHalfPi) return {mu_minus_, w, std::nullopt, b};
        const double d = detail::one_minus_sin(w);
        const double rho = solve_rho(d);
        const double u = mu_ + rho;
        if (rho == 0.0) return {mu_, w, b == Branch::arc_lower ? 1.0 : -1.0, b};
        const double cw = std::cos(w);
        if (cw == 0.0) return {u, w, std::nullopt, b};
        const double num = -2.0 * std::sinh(0.5 * (u + mu_)) * std::sinh(0.5 * rho) + d * std::cosh(u);
        return {u, w, num / (std::sinh(u) * cw), b};
    }

    double mu_;
    double cosh_ = 0.0;
    double sinh_ = 0.0;
    double c_ = 0.0;
    double mu_minus_ = 0.0;
};

[[nodiscard]] inline double mu_minus(double mu) { return Case2Contour(mu).mu_minus(); }

/// sinh u + u cosh(mu) - (mu cosh(mu) - sinh(mu)), scaled by the magnitude of its terms.
[[nodiscard]] inline double mu_minus_relative_residual(double mu, double u) {
    const double c = -detail::x_cosh_minus_sinh(mu);
    const double ch = std::cosh(mu);
    const double value = std::sinh(u) + u * ch + c;
    return std::abs(value) / (std::abs(std::sinh(u)) + std::abs(u * ch) + std::abs(c));
}

/// Case-2 point; param is w for the arcs and u for the tail.
[[nodiscard]] inline ContourPoint path_case2(double mu, Branch branch, double param) {
    const Case2Contour c(mu);
    switch (branch) {
    case Branch::arc_lower: return c.arc_lower(param);
    case Branch::arc_upper: return c.arc_upper(param);
    case Branch::tail: return c.tail(param);
    case Branch::mono_main: break;
    }
    throw domain_error("path_case2 takes arc_lower, arc_upper or tail");
}

/// y (sinh(mu) - mu cosh(mu)), the constant phase on the upper branch.
[[nodiscard]] inline double chi(double y, double mu) {
    if (!(y > 0.0) || !(mu > 0.0)) throw domain_error("chi requires y > 0 and mu > 0");
    return -y * detail::x_cosh_minus_sinh(mu);
}

/// sqrt(t^2 - y^2) - t arccosh(t / y), the same constant in physical variables.
[[nodiscard]] inline double chi_physical(double y, double t) {
    if (!(t > y && y > 0.0)) throw domain_error("chi_physical requires t > y > 0");
    return std::sqrt((t - y) * (t + y)) - t * std::acosh(t / y);
}

[[nodiscard]] inline double psi_case2(double mu, const ContourPoint& p) {
    return std::cosh(p.u) * std::cos(p.w) + p.w * std::cosh(mu);
}

struct PhaseData {
    double chi = 0.0;
    std::function<double(const ContourPoint&)> psi_at;
    double mu_minus = 0.0;
};

[[nodiscard]] inline PhaseData phase_data(double y, double mu) {
    const Case2Contour c(mu);
    return {chi(y, mu), [c](const ContourPoint& p) { return c.psi(p); }, c.mu_minus()};
}

/// |Im(-phi(u + i w)) - Im(-phi(saddle))| for the regime's phase function.
[[nodiscard]] inline double im_phase_residual(const RegimeSpec& regime, const ContourPoint& p) {
    if (regime.is_monotonic()) return std::abs(MonotonicContour(regime.theta()).im_phase(p));
    const double mu = regime.mu();
    return std::abs(-std::sinh(p.u) * std::sin(p.w) + (p.u - mu) * std::cosh(mu) + std::sinh(mu));
}

/// Im(-phi) at the regime's k = 0 saddle: 0 (monotonic) or mu cosh(mu) - sinh(mu).
[[nodiscard]] inline double saddle_phase(const RegimeSpec& regime) {
    if (regime.is_monotonic()) return 0.0;
    return detail::x_cosh_minus_sinh(regime.mu());
}

// ---------------------------------------------------------------------------
// Sampling, used by the contour dump and the constant-phase checks
// ---------------------------------------------------------------------------

/// n points (n forced odd so u = 0 is included) on u in [-u_max, u_max].
[[nodiscard]] inline std::vector<ContourPoint> sample_monotonic(double theta, int n, double u_max) {
    if (n < 3 || !(u_max > 0.0)) throw domain_error("sample_monotonic needs n >= 3 and u_max > 0");
    if (n % 2 == 0) ++n;
    const MonotonicContour c(theta);
    std::vector<ContourPoint> out;
    out.reserve(static_cast<std::size_t>(n));
    const int mid = (n - 1) / 2;
    for (int i = 0; i < n; ++i) {
        const double u = u_max * static_cast<double>(i - mid) / mid;
        out.push_back(c.point(u, u < 0.0 ? Side::minus : Side::plus));
    }
    return out;
}

/// n points on one case-2 branch, endpoints included; the tail spans [mu, mu + u_span].
[[nodiscard]] inline std::vector<ContourPoint> sample_case2(double mu, Branch branch, int n, double u_span) {
    if (n < 2) throw domain_error("sample_case2 needs n >= 2");
    const Case2Contour c(mu);
    std::vector<ContourPoint> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / (n - 1);
        switch (branch) {
        case Branch::arc_lower: out.push_back(c.arc_lower(i == n - 1 ? kHalfPi : -kHalfPi + f * kPi)); break;
        case Branch::arc_upper: out.push_back(c.arc_upper(i == n - 1 ? kThreeHalfPi : kHalfPi + f * kPi)); break;
        case Branch::tail: out.push_back(c.tail(mu + f * u_span)); break;
        case Branch::mono_main: throw domain_error("sample_case2 takes a case-2 branch");
        }
    }
    return out;
}

} // namespace bessel_sd::contour
