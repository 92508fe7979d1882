#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "bessel_sd/asymptotics.hpp"
#include "bessel_sd/contour.hpp"
#include "bessel_sd/evaluators.hpp"

namespace bessel_sd::validation {

/// One measured quantity. "le" passes when measured <= threshold; "decreasing" when the sequence strictly decreases.
struct Check {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    std::string kind = "le";
    std::vector<double> sequence;
    bool passed = false;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;
    double time_limit = 0.0;
    bool skipped = false;
    bool passed = false;
    std::string error;

    /// Headline numbers: the check with the largest measured / threshold ratio.
    [[nodiscard]] const Check* worst() const {
        const Check* w = nullptr;
        double worst_ratio = -1.0;
        for (const auto& c : checks) {
            const double ratio = c.passed ? (c.threshold > 0.0 ? c.measured / c.threshold : 0.0) : INFINITY;
            if (ratio > worst_ratio) {
                worst_ratio = ratio;
                w = &c;
            }
        }
        return w;
    }
};

struct Options {
    bool fast = false;
    /// Added to chi by the oscillatory evaluators; nonzero only for fault injection.
    double chi_offset = 0.0;
    double tol_rel = 1e-12;
};

struct Report {
    std::vector<CriterionResult> criteria;
    double seconds = 0.0;

    [[nodiscard]] bool all_passed() const {
        return std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.skipped || c.passed; });
    }
};

namespace detail {

inline Check le(std::string name, double measured, double threshold) {
    Check c{std::move(name), measured, threshold, "le", {}, false};
    c.passed = std::isfinite(measured) && measured <= threshold;
    return c;
}

inline Check decreasing(std::string name, std::vector<double> seq) {
    Check c;
    c.name = std::move(name);
    c.kind = "decreasing";
    c.passed = !seq.empty();
    double worst = 0.0; // largest ratio seq[i+1] / seq[i]
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (!(seq[i + 1] < seq[i])) c.passed = false;
        worst = std::max(worst, seq[i + 1] / seq[i]);
    }
    c.measured = worst;
    c.threshold = 1.0;
    c.sequence = std::move(seq);
    return c;
}

inline EvaluatorConfig config(const Options& o) {
    EvaluatorConfig cfg;
    cfg.tol_rel = o.tol_rel;
    cfg.chi_offset = o.chi_offset;
    return cfg;
}

inline double ln10() { return std::log(10.0); }

inline std::vector<Check> saddle_and_phase() {
    std::vector<Check> out;
    double worst_saddle = 0.0;
    for (double theta : {0.1, kPi / 4.0, 1.3, kHalfPi})
        for (int k = -3; k <= 3; ++k)
            worst_saddle = std::max(worst_saddle, std::abs(contour::phase_derivative_monotonic(
                                                      theta, contour::saddle_monotonic(theta, k))));
    for (double mu : {0.3, 1.0, ln10()})
        for (int k = -3; k <= 3; ++k)
            for (int sign : {1, -1})
                worst_saddle = std::max(worst_saddle, std::abs(contour::phase_derivative_oscillatory(
                                                          mu, contour::saddle_oscillatory(mu, k, sign))));
    out.push_back(le("saddle |phi'|", worst_saddle, 1e-14));

    constexpr int kPoints = 1000;
    double worst_phase = 0.0;
    for (double theta : {0.1, kPi / 4.0, 1.3, kHalfPi}) {
        const auto regime = RegimeSpec::monotonic(1.0, theta);
        const double scale = 1.0 + std::abs(contour::saddle_phase(regime));
        for (const auto& p : contour::sample_monotonic(theta, kPoints, 6.0))
            worst_phase = std::max(worst_phase, contour::im_phase_residual(regime, p) / scale);
    }
    for (double mu : {0.3, 1.0, ln10()}) {
        const auto regime = RegimeSpec::oscillatory(1.0, mu);
        const double scale = 1.0 + std::abs(contour::saddle_phase(regime));
        for (auto b : {contour::Branch::arc_lower, contour::Branch::arc_upper, contour::Branch::tail})
            for (const auto& p : contour::sample_case2(mu, b, kPoints, 6.0))
                worst_phase = std::max(worst_phase, contour::im_phase_residual(regime, p) / scale);
    }
    out.push_back(le("constant-phase residual / (1 + |saddle phase|)", worst_phase, 1e-10));
    return out;
}

inline std::vector<Check> thm13_grid(const Options& o) {
    const auto cfg = config(o);
    EvaluatorConfig oracle_cfg = cfg;
    oracle_cfg.chi_offset = 0.0;
    double worst_series = 0.0;
    double worst_prop = 0.0;
    const std::vector<double> ys = o.fast ? std::vector<double>{2.0, 10.0} : std::vector<double>{2.0, 5.0, 10.0, 20.0};
    for (double r : {-1.0, 0.0, 0.5})
        for (double mu : {0.5, 1.0, ln10()})
            for (double y : ys) {
                const auto a = k_oscillatory_thm13(r, mu, y, cfg);
                const auto b = k_series({r, y * std::cosh(mu)}, y, oracle_cfg);
                const auto c = k_oscillatory_prop33(r, mu, y, cfg);
                worst_series = std::max(worst_series, relative_difference(a.value, b.value));
                const double frame = a.value.log_scale();
                const double diff = std::abs((a.value - c.value).in_frame(frame).mantissa());
                const double bound =
                    a.abs_error_scaled + c.abs_error_scaled * std::exp(c.value.log_scale() - frame);
                worst_prop = std::max(worst_prop, diff / bound);
            }
    return {le("|thm13 - series| / |series|", worst_series, 1e-8),
            le("|thm13 - prop33| / (err_thm13 + err_prop33)", worst_prop, 1.0)};
}

inline std::vector<Check> monotonic_grid(const Options& o) {
    const auto cfg = config(o);
    double worst = 0.0;
    for (double theta : {0.0, kPi / 6.0, kPi / 3.0})
        for (double r : {0.0, 1.0})
            for (double y : {5.0, 20.0, 50.0}) {
                const auto a = k_monotonic_sd(r, theta, y, cfg);
                const auto b = k_direct({r, y * std::sin(theta)}, y, cfg);
                worst = std::max(worst, relative_difference(a.value, b.value));
            }
    return {le("|steepest - direct| / |direct|", worst, 1e-9)};
}

inline std::vector<Check> monotonic_asymptotics(const Options& o) {
    const auto cfg = config(o);
    std::vector<Check> out;
    struct Case {
        double theta, r;
        const char* label;
    };
    for (const Case c : {Case{0.0, 0.0, "theta=0 r=0"}, Case{kPi / 6.0, 0.3, "theta=pi/6 r=0.3"},
                         Case{kPi / 3.0, -1.0, "theta=pi/3 r=-1"}}) {
        std::vector<double> seq;
        for (double y : {25.0, 50.0, 100.0, 200.0, 400.0})
            seq.push_back(residual_monotonic(c.r, c.theta, y, k_monotonic_sd(c.r, c.theta, y, cfg)));
        const double last = seq.back();
        out.push_back(decreasing(std::string("residual decreasing, ") + c.label, seq));
        out.push_back(le(std::string("residual at y=400, ") + c.label, last, 1e-2));
    }
    return out;
}

inline std::vector<Check> boundary_asymptotics(const Options& o) {
    const auto cfg = config(o);
    std::vector<double> seq;
    for (double y : {1e2, 1e3, 1e4}) seq.push_back(residual_monotonic(0.0, kHalfPi, y, k_monotonic_sd(0.0, kHalfPi, y, cfg)));
    const double last = seq.back();
    return {decreasing("residual decreasing, theta=pi/2", seq), le("residual at y=1e4", last, 5e-2)};
}

inline std::vector<Check> oscillatory_asymptotics(const Options& o) {
    const auto cfg = config(o);
    std::vector<Check> out;
    struct Case {
        double r, mu;
        const char* label;
    };
    for (const Case c : {Case{0.0, 1.0, "r=0 mu=1"}, Case{0.5, 0.5, "r=0.5 mu=0.5"}, Case{-0.7, ln10(), "r=-0.7 mu=ln10"}}) {
        std::vector<double> seq;
        for (double y : {50.0, 100.0, 200.0, 400.0, 800.0})
            seq.push_back(residual_oscillatory(c.r, c.mu, y, k_oscillatory_thm13(c.r, c.mu, y, cfg)));
        const double last = seq.back();
        out.push_back(decreasing(std::string("residual decreasing, ") + c.label, seq));
        out.push_back(le(std::string("residual at y=800, ") + c.label, last, 5e-2));
    }

    // scan y across a zero of sin(pi/4 - chi) near y = 200 at r = 0, mu = 1
    const double mu = 1.0;
    const double slope = -contour::chi(1.0, mu); // chi = -slope * y
    const double k = std::round((200.0 * slope + kPi / 4.0) / kPi);
    const double y0 = (k * kPi - kPi / 4.0) / slope;
    int mismatches = 0;
    int exact_changes = 0;
    int asym_changes = 0;
    double prev_exact = 0.0;
    double prev_asym = 0.0;
    for (double delta : {-0.3, -0.2, -0.1, 0.1, 0.2, 0.3}) {
        const double y = y0 + delta / slope;
        const double be = exact_bracket(0.0, mu, y, k_oscillatory_thm13(0.0, mu, y, cfg)).real();
        const double ba = asym_oscillatory(0.0, mu, y).bracket.real();
        if ((be > 0.0) != (ba > 0.0)) ++mismatches;
        if (prev_exact != 0.0 && (be > 0.0) != (prev_exact > 0.0)) ++exact_changes;
        if (prev_asym != 0.0 && (ba > 0.0) != (prev_asym > 0.0)) ++asym_changes;
        prev_exact = be;
        prev_asym = ba;
    }
    out.push_back(le("bracket sign mismatches across a zero", mismatches, 0.0));
    out.push_back(le("|1 - sign changes seen|", std::abs(1.0 - std::min(exact_changes, asym_changes)) +
                                                    std::abs(exact_changes - asym_changes), 0.0));
    return out;
}

inline std::vector<Check> oracle_consistency(const Options& o) {
    const auto cfg = config(o);
    double worst_cross = 0.0;
    double worst_even = 0.0;
    double worst_conj = 0.0;
    for (OrderSpec nu : {OrderSpec{0.3, 5.0}, OrderSpec{-0.5, 12.0}})
        for (double y : {0.5, 1.0, 2.0, 5.0}) {
            const auto d = k_direct(nu, y, cfg);
            worst_cross = std::max(worst_cross, relative_difference(k_series(nu, y, cfg).value, d.value));
            worst_even = std::max(worst_even, relative_difference(k_direct(nu.negated(), y, cfg).value, d.value));
            // unfolded evaluations at conj(nu), so the symmetry is computed rather than imposed
            const auto dc = bessel_sd::detail::k_direct_raw(std::conj(nu.nu()), y, cfg);
            const auto sc = bessel_sd::detail::k_series_raw(std::conj(nu.nu()), y, cfg);
            const auto s = k_series(nu, y, cfg);
            worst_conj = std::max(worst_conj, relative_difference(dc.value, d.value.conj()));
            worst_conj = std::max(worst_conj, relative_difference(sc.value, s.value.conj()));
        }
    return {le("|series - direct| / |direct|", worst_cross, 1e-10), le("|K_nu - K_-nu| / |K_nu|", worst_even, 1e-12),
            le("|K_conj(nu) - conj K_nu| / |K_nu|", worst_conj, 1e-12)};
}

inline std::vector<Check> mu_minus_checks() {
    double worst = 0.0;
    double worst_order = -INFINITY;
    for (double mu : {0.1, 1.0, ln10(), 5.0}) {
        const double m = contour::mu_minus(mu);
        worst = std::max(worst, contour::mu_minus_relative_residual(mu, m));
        worst_order = std::max(worst_order, m - mu);
    }
    const double m10 = contour::mu_minus(ln10());
    const double outside = std::max({0.0, 1.067 - m10, m10 - 1.069});
    return {le("relative residual of the defining equation", worst, 1e-14),
            le("distance of mu_minus(ln 10) outside [1.067, 1.069]", outside, 0.0),
            le("max(mu_minus - mu), must be negative", worst_order, -1e-300)};
}

struct Spec {
    int id;
    const char* title;
    double time_limit;
    bool in_fast;
    std::function<std::vector<Check>(const Options&)> run;
};

inline std::vector<Spec> suite() {
    return {
        {1, "saddle and constant-phase invariants", 1.0, true, [](const Options&) { return saddle_and_phase(); }},
        {2, "oscillatory representation against the series oracle and prop33", 20.0, true, thm13_grid},
        {3, "monotonic steepest-descent representation against the direct integral", 10.0, true, monotonic_grid},
        {4, "monotonic asymptotic convergence, theta < pi/2", 0.0, true, monotonic_asymptotics},
        {5, "monotonic asymptotic convergence, theta = pi/2", 0.0, false, boundary_asymptotics},
        {6, "oscillatory asymptotic convergence and bracket signs", 0.0, false, oscillatory_asymptotics},
        {7, "oracle self-consistency and symmetries", 0.0, true, oracle_consistency},
        {8, "mu_minus root", 0.0, true, [](const Options&) { return mu_minus_checks(); }},
    };
}

} // namespace detail

inline CriterionResult run_criterion(const detail::Spec& spec, const Options& o) {
    CriterionResult res;
    res.id = spec.id;
    res.title = spec.title;
    res.time_limit = spec.time_limit;
    if (o.fast && !spec.in_fast) {
        res.skipped = true;
        return res;
    }
    const auto t0 = std::chrono::steady_clock::now();
    try {
        res.checks = spec.run(o);
    } catch (const std::exception& e) {
        res.error = e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.passed = res.error.empty() && !res.checks.empty() &&
                 std::all_of(res.checks.begin(), res.checks.end(), [](const Check& c) { return c.passed; });
    if (res.time_limit > 0.0) {
        res.checks.push_back(detail::le("runtime seconds", res.seconds, res.time_limit));
        res.passed = res.passed && res.seconds < res.time_limit;
    }
    return res;
}

/// Runs every criterion in order; the last entry is the whole-suite runtime check.
inline Report run(const Options& o, const std::function<void(const CriterionResult&)>& on_result = {}) {
    Report report;
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& spec : detail::suite()) {
        report.criteria.push_back(run_criterion(spec, o));
        if (on_result) on_result(report.criteria.back());
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    CriterionResult whole;
    whole.id = 9;
    whole.title = "full suite passes within the time budget";
    whole.time_limit = 60.0;
    whole.seconds = report.seconds;
    if (o.fast) {
        whole.skipped = true;
    } else {
        int failed = 0;
        for (const auto& c : report.criteria)
            if (!c.passed) ++failed;
        whole.checks.push_back(detail::le("failed criteria", failed, 0.0));
        whole.checks.push_back(detail::le("runtime seconds", report.seconds, whole.time_limit));
        whole.passed = failed == 0 && report.seconds < whole.time_limit;
    }
    report.criteria.push_back(whole);
    if (on_result) on_result(report.criteria.back());
    return report;
}

} // namespace bessel_sd::validation
