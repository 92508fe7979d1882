#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "bessel_sd/errors.hpp"

namespace bessel_sd::quad {

using complex = std::complex<double>;

struct QuadratureOutcome {
    complex value{};
    double abs_error = 0.0;
    int evaluations = 0;
    /// The tolerance was not reached because every remaining error is at the rounding floor.
    bool roundoff_limited = false;
};

struct QuadratureOptions {
    double tol_abs = 0.0;
    double tol_rel = 0.0;
    int max_evals = 200'000;
};

namespace detail {

// Gauss-Kronrod 7/15 pair (QUADPACK qk15 constants).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline constexpr int kRuleSize = 15;

struct Segment {
    double a;
    double b;
    complex value;
    double error;
    double floor;
    friend bool operator<(const Segment& l, const Segment& r) noexcept { return l.error < r.error; }
};

inline void check_finite(complex v, double x) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw domain_error("integrand is not finite at x = " + std::to_string(x));
}

/// One K15 application with the QUADPACK error heuristic applied to complex values.
template <class F>
Segment gk15(F& f, double a, double b) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<complex, 7> f1{}, f2{};
    const complex fc = f(center);
    check_finite(fc, center);
    complex resk = fc * kWgk[7];
    complex resg = fc * kWg[3];
    double resabs = std::abs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const complex lo = f(center - dx);
        const complex hi = f(center + dx);
        check_finite(lo, center - dx);
        check_finite(hi, center + dx);
        f1[j] = lo;
        f2[j] = hi;
        resk += kWgk[j] * (lo + hi);
        resabs += kWgk[j] * (std::abs(lo) + std::abs(hi));
        if (j % 2 == 1) resg += kWg[j / 2] * (lo + hi);
    }
    const complex mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double ah = std::abs(half);
    resabs *= ah;
    resasc *= ah;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double floor = resabs > uflow / (50.0 * eps) ? 50.0 * eps * resabs : 0.0;
    err = std::max(floor, err);
    return {a, b, resk * half, err, floor};
}

} // namespace detail

/**
 * @brief Global adaptive Gauss-Kronrod (7/15) quadrature of a complex integrand on [a, b].
 *
 * The worst segment is bisected until the summed error estimate drops below
 * max(tol_abs, tol_rel * |value|), or until the worst segment's error is
 * at the rounding floor 50 eps |f|-integral (flagged roundoff_limited). Exhausting max_evals throws
 * convergence_error; a non-finite integrand value or a >= b throws domain_error.
 */
template <class F>
QuadratureOutcome integrate_finite(F&& f, double a, double b, const QuadratureOptions& opt) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw domain_error("integrate_finite requires finite a < b");
    if (!(opt.tol_abs > 0.0 || opt.tol_rel > 0.0)) throw domain_error("quadrature tolerance must be positive");

    std::vector<detail::Segment> heap;
    heap.push_back(detail::gk15(f, a, b));
    int evals = detail::kRuleSize;

    auto totals = [&heap] {
        complex v{};
        double e = 0.0;
        for (const auto& s : heap) {
            v += s.value;
            e += s.error;
        }
        return std::pair{v, e};
    };

    auto [value, error] = totals();
    bool roundoff = false;
    while (error > std::max(opt.tol_abs, opt.tol_rel * std::abs(value))) {
        if (evals + 2 * detail::kRuleSize > opt.max_evals)
            throw convergence_error("quadrature budget of " + std::to_string(opt.max_evals) +
                                    " evaluations exhausted; error estimate " + std::to_string(error));
        std::pop_heap(heap.begin(), heap.end());
        const detail::Segment worst = heap.back();
        if (worst.error <= worst.floor) {
            std::push_heap(heap.begin(), heap.end());
            roundoff = true;
            break;
        }
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b))
            throw convergence_error("quadrature segment cannot be bisected further near x = " +
                                    std::to_string(mid));
        const detail::Segment left = detail::gk15(f, worst.a, mid);
        const detail::Segment right = detail::gk15(f, mid, worst.b);
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
        evals += 2 * detail::kRuleSize;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        // re-sum occasionally to keep the running totals free of drift
        if (evals % (64 * detail::kRuleSize) == 0) std::tie(value, error) = totals();
    }
    std::tie(value, error) = totals();
    return {value, error, evals, roundoff};
}

template <class F>
QuadratureOutcome integrate_finite(F&& f, double a, double b, double tol_abs) {
    return integrate_finite(std::forward<F>(f), a, b, QuadratureOptions{tol_abs, 0.0});
}

/**
 * @brief Integral over [a, inf) of an integrand eventually bounded by C exp(-decay * u).
 *
 * The interval is truncated at the first probe point U beyond which the tail
 * bound max|f| / decay (sampled at two consecutive probes) is below half the
 * tolerance; the finite part is solved to the other half. The tail bound is
 * added to the reported error.
 */
template <class F>
QuadratureOutcome integrate_semi_infinite(F&& f, double a, double decay, const QuadratureOptions& opt) {
    if (!(decay > 0.0) || !std::isfinite(decay)) throw domain_error("decay hint must be positive");
    if (!std::isfinite(a)) throw domain_error("integrate_semi_infinite requires a finite lower limit");
    if (!(opt.tol_abs > 0.0 || opt.tol_rel > 0.0)) throw domain_error("quadrature tolerance must be positive");

    constexpr int kMaxProbes = 4096;
    double step = 1.0 / decay;
    double u = a;
    double l1_estimate = 0.0;
    int evals = 0;
    int quiet = 0;
    double tail_bound = 0.0;
    auto magnitude = [&](double x) {
        const complex v = f(x);
        ++evals;
        detail::check_finite(v, x);
        return std::abs(v);
    };
    l1_estimate = std::max(magnitude(a), magnitude(a + 0.125 * step)) * step;
    for (int k = 1;; ++k) {
        if (k > kMaxProbes) throw convergence_error("semi-infinite truncation point not found");
        if (k % 32 == 0) step *= 2.0;
        u += step;
        const double m = std::max(magnitude(u), magnitude(u + 0.5 * step));
        l1_estimate += m * step;
        const double target = std::max(opt.tol_abs, 1e-3 * opt.tol_rel * l1_estimate);
        if (m / decay <= 0.5 * target) {
            tail_bound = std::max(tail_bound, m / decay);
            if (++quiet == 2) break;
        } else {
            quiet = 0;
            tail_bound = 0.0;
        }
    }
    QuadratureOptions inner = opt;
    inner.tol_abs = 0.5 * opt.tol_abs;
    inner.tol_rel = 0.5 * opt.tol_rel;
    inner.max_evals = opt.max_evals - evals;
    auto out = integrate_finite(f, a, u, inner);
    out.abs_error += tail_bound;
    out.evaluations += evals;
    return out;
}

template <class F>
QuadratureOutcome integrate_semi_infinite(F&& f, double a, double tol_abs, double decay) {
    return integrate_semi_infinite(std::forward<F>(f), a, decay, QuadratureOptions{tol_abs, 0.0});
}

/**
 * @brief Integral over [a, b] of f with an inverse square-root singularity at a.
 *
 * Substitutes u = a + s^2 and integrates 2 s f(a + s^2) over [0, sqrt(b - a)].
 * The integrand may take (u) or (u, offset) with offset = s^2 = u - a, which
 * lets callers evaluate near the singular endpoint without the cancellation in
 * u - a.
 */
template <class F>
QuadratureOutcome integrate_sqrt_singular(F&& f, double a, double b, const QuadratureOptions& opt) {
    if (!(a < b)) throw domain_error("integrate_sqrt_singular requires a < b");
    auto substituted = [&f, a](double s) -> complex {
        const double offset = s * s;
        if constexpr (std::is_invocable_v<F&, double, double>) {
            return 2.0 * s * complex(f(a + offset, offset));
        } else {
            return 2.0 * s * complex(f(a + offset));
        }
    };
    return integrate_finite(substituted, 0.0, std::sqrt(b - a), opt);
}

template <class F>
QuadratureOutcome integrate_sqrt_singular(F&& f, double a, double b, double tol_abs) {
    return integrate_sqrt_singular(std::forward<F>(f), a, b, QuadratureOptions{tol_abs, 0.0});
}

} // namespace bessel_sd::quad
