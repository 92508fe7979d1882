#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bessel_sd/contour.hpp"
#include "bessel_sd/core_types.hpp"
#include "bessel_sd/errors.hpp"
#include "bessel_sd/log_gamma.hpp"
#include "bessel_sd/quadrature.hpp"
#include "bessel_sd/scaled_complex.hpp"

namespace bessel_sd {

namespace detail {

using complex = std::complex<double>;
inline constexpr double kEps = std::numeric_limits<double>::epsilon();

/// One quadrature whose result enters the final value as weight * integral.
struct Piece {
    std::function<quad::QuadratureOutcome(const quad::QuadratureOptions&)> run;
    complex weight;
};

struct Combined {
    complex value;
    double error;
    int evaluations;
};

/**
 * Sums weighted pieces to relative accuracy tol_rel. A first pass asks each
 * piece for tol_rel / 4 relative to itself; if the pieces cancel, a second
 * pass reruns them against an absolute target derived from the first sum.
 * rounding_rel * sum |w_i v_i| is added to the error for the integrand's own
 * rounding.
 */
inline Combined combine_pieces(const std::vector<Piece>& pieces, const EvaluatorConfig& cfg, double rounding_rel) {
    std::vector<quad::QuadratureOutcome> parts(pieces.size());
    int evals = 0;
    auto run_all = [&](auto options_for) {
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            if (pieces[i].weight == complex(0.0, 0.0)) {
                parts[i] = {};
                continue;
            }
            parts[i] = pieces[i].run(options_for(i));
            evals += parts[i].evaluations;
        }
    };
    auto totals = [&] {
        complex v{};
        double err = 0.0;
        double mass = 0.0;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            const double w = std::abs(pieces[i].weight);
            v += pieces[i].weight * parts[i].value;
            err += w * parts[i].abs_error;
            mass += w * std::abs(parts[i].value);
        }
        return std::tuple{v, err, mass};
    };

    run_all([&](std::size_t) { return quad::QuadratureOptions{0.0, 0.25 * cfg.tol_rel, cfg.max_evals}; });
    auto [value, error, mass] = totals();
    if (error > cfg.tol_rel * std::abs(value)) {
        if (64.0 * kEps * mass > cfg.tol_rel * std::abs(value))
            throw precision_exhausted("terms cancel beyond double precision (cancellation ratio " +
                                      std::to_string(mass / std::abs(value)) + ")");
        const double target = 0.25 * cfg.tol_rel * std::abs(value) / static_cast<double>(pieces.size());
        run_all([&](std::size_t i) {
            return quad::QuadratureOptions{target / std::abs(pieces[i].weight), 0.0, cfg.max_evals};
        });
        std::tie(value, error, mass) = totals();
    }
    if (64.0 * kEps * mass > cfg.tol_rel * std::abs(value))
        throw precision_exhausted("terms cancel beyond double precision (cancellation ratio " +
                                  std::to_string(mass / std::abs(value)) + ")");
    const bool limited = std::any_of(parts.begin(), parts.end(), [](const auto& p) { return p.roundoff_limited; });
    if (limited && error > cfg.tol_rel * std::abs(value))
        throw precision_exhausted("quadrature reached its rounding floor at relative error " +
                                  std::to_string(error / std::abs(value)));
    return {value, error + rounding_rel * mass, std::max(evals, 1)};
}

inline EvalOutcome make_outcome(complex value, double log_scale, double abs_error, int evals, Method m) {
    EvalOutcome out;
    out.value = ScaledComplex(value, log_scale).normalized();
    out.abs_error_scaled = value == complex(0.0, 0.0) ? abs_error
                                                      : abs_error * std::exp(log_scale - out.value.log_scale());
    out.evaluations = evals;
    out.method = m;
    return out;
}

inline EvalOutcome conjugated(EvalOutcome o) {
    o.value = o.value.conj();
    o.conjugated = !o.conjugated;
    return o;
}

/// Half-line integrals of exp(-y cosh R + nu R) along Im R = alpha.
inline EvalOutcome k_direct_raw(complex nu, double y, const EvaluatorConfig& cfg) {
    const double r = nu.real();
    const double t = nu.imag();
    const double at = std::abs(t);
    double alpha = 0.0;
    if (at > 0.0) {
        const double eps_line = std::min(kPi / 4.0, 2.0 / at);
        alpha = at < y ? std::min(std::asin(at / y), kHalfPi - eps_line) : kHalfPi - eps_line;
        if (t < 0.0) alpha = -alpha;
    }
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    const double log_scale = -y * ca - t * alpha;
    auto f = [=](double u) -> complex {
        const double h = std::sinh(0.5 * u);
        const double mag = std::exp(-2.0 * y * ca * h * h + r * u);
        const double phase = t * u + r * alpha - y * std::sinh(u) * sa;
        return mag * complex(std::cos(phase), std::sin(phase));
    };
    std::vector<Piece> pieces;
    pieces.push_back({[f](const quad::QuadratureOptions& o) { return quad::integrate_semi_infinite(f, 0.0, 1.0, o); },
                      0.5});
    pieces.push_back({[f](const quad::QuadratureOptions& o) {
                          return quad::integrate_semi_infinite([&f](double u) { return f(-u); }, 0.0, 1.0, o);
                      },
                      0.5});
    const auto c = combine_pieces(pieces, cfg, 0.0);
    // |integrand| <= e^{|r| u} with u of order one near the peak
    const double ratio = std::max(1.0, 1.0 / std::abs(c.value));
    if (64.0 * kEps * ratio > cfg.tol_rel)
        throw precision_exhausted("direct integral loses more than the requested precision to cancellation");
    const double rounding = 64.0 * kEps * (ratio + y * std::abs(sa) + at) * std::abs(c.value);
    return make_outcome(c.value, log_scale, c.error + rounding, c.evaluations, Method::direct);
}

/// One I-series: returns log((y/2)^nu / Gamma(nu+1)), the partial sum, and the largest term.
struct SeriesSum {
    complex log_lead;
    complex sum;
    double max_term;
    int terms;
};

inline SeriesSum i_series(complex nu, double y, double tol_rel) {
    const double half = 0.5 * y;
    const complex log_lead = nu * std::log(half) - complex_log_gamma(nu + 1.0);
    const double q = half * half;
    complex term = 1.0;
    complex sum = 1.0;
    double max_term = 1.0;
    const double threshold = tol_rel * 1e-2;
    int quiet = 0;
    int m = 0;
    for (; m < 100000; ++m) {
        const complex next = term * (q / ((m + 1.0) * (nu + (m + 1.0))));
        const bool decreasing = std::abs(next) <= std::abs(term);
        term = next;
        sum += term;
        max_term = std::max(max_term, std::abs(term));
        if (decreasing && std::abs(term) < threshold * std::abs(sum)) {
            if (++quiet == 3) break;
        } else {
            quiet = 0;
        }
    }
    if (m == 100000) throw convergence_error("I-series did not converge");
    return {log_lead, sum, max_term, m + 1};
}

inline EvalOutcome k_series_raw(complex nu, double y, const EvaluatorConfig& cfg) {
    if (nu.imag() == 0.0 && nu.real() == std::round(nu.real()))
        throw domain_error("integer order unsupported by the series evaluator");
    const auto minus = i_series(-nu, y, cfg.tol_rel);
    const auto plus = i_series(nu, y, cfg.tol_rel);
    const auto i_minus = ScaledComplex::from_log(minus.log_lead) * minus.sum;
    const auto i_plus = ScaledComplex::from_log(plus.log_lead) * plus.sum;
    const auto diff = i_minus - i_plus;
    if (diff.is_zero()) throw precision_exhausted("I-series difference cancels completely");
    const complex log_sin = log_sin_pi(nu);
    if (!std::isfinite(log_sin.real())) throw domain_error("intermediate log magnitude overflows");
    const auto value = diff * ScaledComplex::from_log(std::log(kHalfPi) - log_sin);
    if (!value.is_finite()) throw domain_error("intermediate log magnitude overflows the scaled frame");

    // magnitude of the largest individual contribution relative to the difference
    const double lm = std::exp(minus.log_lead.real() - diff.log_abs()) * minus.max_term;
    const double lp = std::exp(plus.log_lead.real() - diff.log_abs()) * plus.max_term;
    const double ratio = std::max(lm, lp);
    if (16.0 * kEps * ratio > cfg.tol_rel)
        throw precision_exhausted("series terms cancel beyond double precision (ratio " + std::to_string(ratio) + ")");
    const double log_err = std::abs(minus.log_lead) + std::abs(plus.log_lead) + std::abs(log_sin);
    const double rel = kEps * (16.0 * ratio * std::sqrt(minus.terms + plus.terms) + 4.0 * log_err) +
                       cfg.tol_rel * 1e-2;
    EvalOutcome out;
    out.value = value;
    out.abs_error_scaled = rel * std::abs(value.mantissa());
    out.evaluations = minus.terms + plus.terms;
    out.method = Method::series;
    return out;
}

inline EvalOutcome k_monotonic_raw(double r, double theta, double y, const EvaluatorConfig& cfg) {
    const contour::MonotonicContour path(theta);
    auto integrand = [&path, r, y](double u, contour::Side side) -> complex {
        const auto p = path.point(u, side);
        const double mag = std::exp(-y * path.height_excess(p) + r * u);
        return mag * complex(std::cos(r * p.w), std::sin(r * p.w)) * complex(1.0, *p.dw_du);
    };
    std::vector<Piece> pieces;
    pieces.push_back({[integrand](const quad::QuadratureOptions& o) {
                          return quad::integrate_semi_infinite(
                              [&](double u) { return integrand(u, contour::Side::plus); }, 0.0, 1.0, o);
                      },
                      0.5});
    // u -> -u on the left half: du picks up a sign that cancels the reversed limits
    pieces.push_back({[integrand](const quad::QuadratureOptions& o) {
                          return quad::integrate_semi_infinite(
                              [&](double s) { return integrand(-s, contour::Side::minus); }, 0.0, 1.0, o);
                      },
                      0.5});
    const double height = path.saddle_height();
    const auto c = combine_pieces(pieces, cfg, kEps * (64.0 + 8.0 * y * (1.0 + height)));
    auto out = make_outcome(c.value, -y * height, c.error, c.evaluations, Method::steepest_monotonic);
    out.near_boundary = theta_near_boundary(theta);
    return out;
}

/// Pieces shared by the two oscillatory representations, all in the frame exp(-y (pi/2) cosh mu).
struct OscillatorySetup {
    contour::Case2Contour path;
    double r;
    double y;
    double t;
    double psi0;
    complex e_plus_chi;   ///< e^{i chi}
    complex e_minus_chi;  ///< e^{-i chi}
    complex geometric;    ///< e^{2 pi i r} / (1 - e^{-2 pi t + 2 pi i r})

    OscillatorySetup(double r_, double mu, double y_, const EvaluatorConfig& cfg)
        : path(mu), r(r_), y(y_), t(y_ * std::cosh(mu)), psi0(kHalfPi * std::cosh(mu)) {
        const double chi = contour::chi(y, mu) + cfg.chi_offset;
        e_plus_chi = {std::cos(chi), std::sin(chi)};
        e_minus_chi = std::conj(e_plus_chi);
        const double q_abs = std::exp(-kTwoPi * t);
        if (!(q_abs < 1.0)) throw domain_error("geometric factor requires e^{-2 pi t} < 1");
        const complex phase(std::cos(kTwoPi * r), std::sin(kTwoPi * r));
        geometric = phase / (1.0 - q_abs * phase);
    }

    /// e^{-y (psi - psi0)} e^{sigma r u} e^{i r w} (1 + i sigma dw/du)
    [[nodiscard]] complex du_integrand(const contour::ContourPoint& p, int sigma) const {
        const double mag = std::exp(-y * path.psi_excess(p) + sigma * r * p.u);
        const complex rot(std::cos(r * p.w), std::sin(r * p.w));
        return mag * rot * complex(1.0, sigma * p.dw_du.value_or(0.0));
    }

    /// The du-integrand times ds/du = 2 s near mu_minus, with u = mu_minus + s^2.
    [[nodiscard]] complex du_integrand_scaled(const contour::ContourPoint& p, int sigma, double two_s) const {
        const double mag = std::exp(-y * path.psi_excess(p) + sigma * r * p.u);
        const complex rot(std::cos(r * p.w), std::sin(r * p.w));
        if (p.vertical()) return mag * rot * complex(0.0, 0.0);
        return mag * rot * complex(two_s, sigma * two_s * *p.dw_du);
    }

    /// e^{-y (psi - shift)} e^{sigma r u} e^{i r w} (sigma du/dw + i)
    [[nodiscard]] complex dw_integrand(const contour::ContourPoint& p, int sigma, double shift) const {
        const double mag = std::exp(-y * (path.psi(p) - shift) + sigma * r * p.u);
        const complex rot(std::cos(r * p.w), std::sin(r * p.w));
        return mag * rot * complex(sigma * p.du_dw(), 1.0);
    }

    [[nodiscard]] double rounding_rel() const { return kEps * (64.0 + 16.0 * y * std::cosh(path.mu()) * kTwoPi); }

    [[nodiscard]] Piece tail_piece(int sigma, complex weight) const {
        const double decay = 1.0;
        return {[this, sigma, decay](const quad::QuadratureOptions& o) {
                    return quad::integrate_semi_infinite(
                        [this, sigma](double u) { return du_integrand(path.tail(u), sigma); }, path.mu(), decay, o);
                },
                weight};
    }

    [[nodiscard]] Piece arc_upper_du_piece(int sigma, complex weight) const {
        return {[this, sigma](const quad::QuadratureOptions& o) {
                    const double len = std::sqrt(path.mu() - path.mu_minus());
                    return quad::integrate_finite(
                        [this, sigma](double s) {
                            return du_integrand_scaled(path.arc_upper_offset(s * s), sigma, 2.0 * s);
                        },
                        0.0, len, o);
                },
                weight};
    }

    [[nodiscard]] Piece arc_upper_dw_piece(int sigma, complex weight, double shift) const {
        return {[this, sigma, shift](const quad::QuadratureOptions& o) {
                    return quad::integrate_finite(
                        [this, sigma, shift](double w) { return dw_integrand(path.arc_upper(w), sigma, shift); },
                        kHalfPi, kThreeHalfPi, o);
                },
                weight};
    }

    [[nodiscard]] Piece arc_lower_dw_piece(int sigma, complex weight, double shift) const {
        return {[this, sigma, shift](const quad::QuadratureOptions& o) {
                    return quad::integrate_finite(
                        [this, sigma, shift](double w) { return dw_integrand(path.arc_lower(w), sigma, shift); },
                        -kHalfPi, kHalfPi, o);
                },
                weight};
    }
};

inline EvalOutcome k_thm13_raw(double r, double mu, double y, const EvaluatorConfig& cfg) {
    const OscillatorySetup s(r, mu, y, cfg);
    // dw-terms: e^{-2 pi t} e^{+y psi0} relative to the frame e^{-y psi0}, i.e. e^{-pi t} overall
    const complex g = s.geometric * std::exp(-kPi * s.t);
    const complex wm = 0.5 * s.e_plus_chi;
    const complex wp = 0.5 * s.e_minus_chi;
    std::vector<Piece> pieces;
    pieces.push_back(s.arc_upper_du_piece(-1, wm));
    pieces.push_back(s.tail_piece(-1, wm));
    pieces.push_back(s.arc_upper_du_piece(+1, wp));
    pieces.push_back(s.tail_piece(+1, wp));
    pieces.push_back(s.arc_lower_dw_piece(-1, wm * g, -s.psi0));
    pieces.push_back(s.arc_upper_dw_piece(-1, wm * g, -s.psi0));
    pieces.push_back(s.arc_lower_dw_piece(+1, -wp * g, -s.psi0));
    pieces.push_back(s.arc_upper_dw_piece(+1, -wp * g, -s.psi0));
    const auto c = combine_pieces(pieces, cfg, s.rounding_rel());
    return make_outcome(c.value, -y * s.psi0, c.error, c.evaluations, Method::thm13);
}

inline EvalOutcome k_prop33_raw(double r, double mu, double y, const EvaluatorConfig& cfg) {
    const OscillatorySetup s(r, mu, y, cfg);
    const complex g = 1.0 / (1.0 - std::exp(-kTwoPi * s.t) * complex(std::cos(kTwoPi * r), std::sin(kTwoPi * r)));
    // w in [3pi/2, 5pi/2] is arc_lower shifted by 2 pi: psi gains 2 pi cosh mu and e^{irw} gains e^{2 pi i r}
    const complex shifted = s.geometric * std::exp(-kPi * s.t);
    const complex wm = 0.5 * s.e_plus_chi;
    const complex wp = 0.5 * s.e_minus_chi;
    std::vector<Piece> pieces;
    pieces.push_back(s.tail_piece(-1, wm));
    pieces.push_back(s.tail_piece(+1, wp));
    pieces.push_back(s.arc_upper_dw_piece(-1, wm * g, s.psi0));
    pieces.push_back(s.arc_lower_dw_piece(-1, wm * shifted, -s.psi0));
    pieces.push_back(s.arc_upper_dw_piece(+1, -wp * g, s.psi0));
    pieces.push_back(s.arc_lower_dw_piece(+1, -wp * shifted, -s.psi0));
    const auto c = combine_pieces(pieces, cfg, s.rounding_rel());
    return make_outcome(c.value, -y * s.psi0, c.error, c.evaluations, Method::prop33);
}

inline void check_argument(double y) {
    if (!(y > 0.0) || !std::isfinite(y)) throw domain_error("argument y must be positive and finite");
}

} // namespace detail

/// K_nu(y) from the line integral 1/2 int exp(-y cosh R + nu R) dR, shifted to Im R = alpha.
[[nodiscard]] inline EvalOutcome k_direct(OrderSpec nu, double y, const EvaluatorConfig& cfg = {}) {
    cfg.validate();
    detail::check_argument(y);
    if (nu.needs_conjugation()) return detail::conjugated(detail::k_direct_raw(nu.folded().nu(), y, cfg));
    return detail::k_direct_raw(nu.nu(), y, cfg);
}

/// K_nu(y) = (pi/2) (I_{-nu}(y) - I_nu(y)) / sin(nu pi) from the power series of I.
[[nodiscard]] inline EvalOutcome k_series(OrderSpec nu, double y, const EvaluatorConfig& cfg = {}) {
    cfg.validate();
    detail::check_argument(y);
    if (nu.needs_conjugation()) return detail::conjugated(detail::k_series_raw(nu.folded().nu(), y, cfg));
    return detail::k_series_raw(nu.nu(), y, cfg);
}

/// K_{r + i y sin(theta)}(y) along the steepest-descent path through i theta.
[[nodiscard]] inline EvalOutcome k_monotonic_sd(double r, double theta, double y, const EvaluatorConfig& cfg = {}) {
    cfg.validate();
    detail::check_argument(y);
    if (!(theta >= 0.0 && theta <= kHalfPi)) throw domain_error("steepest-descent evaluator requires 0 <= theta <= pi/2");
    return detail::k_monotonic_raw(r, theta, y, cfg);
}

/// K_{r + i y cosh(mu)}(y) from the single-saddle representation over arc_upper, tail and both arcs in w.
[[nodiscard]] inline EvalOutcome k_oscillatory_thm13(double r, double mu, double y, const EvaluatorConfig& cfg = {}) {
    cfg.validate();
    detail::check_argument(y);
    if (!(mu > 0.0) || !std::isfinite(mu)) throw domain_error("oscillatory evaluator requires mu > 0");
    return detail::k_thm13_raw(r, mu, y, cfg);
}

/// K_{r + i y cosh(mu)}(y) from the tail in u and w in [pi/2, 5pi/2].
[[nodiscard]] inline EvalOutcome k_oscillatory_prop33(double r, double mu, double y, const EvaluatorConfig& cfg = {}) {
    cfg.validate();
    detail::check_argument(y);
    if (!(mu > 0.0) || !std::isfinite(mu)) throw domain_error("oscillatory evaluator requires mu > 0");
    return detail::k_prop33_raw(r, mu, y, cfg);
}

} // namespace bessel_sd
