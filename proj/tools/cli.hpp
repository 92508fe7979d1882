#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bessel_sd/bessel_sd.hpp"

namespace bessel_sd::cli {

enum ExitCode : int {
    kOk = 0,
    kValidationFailed = 1,
    kBadArguments = 2,
    kPrecisionExhausted = 3,
    kNotConverged = 4,
};

/// Shortest round-trip decimal, independent of the C locale.
inline std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

inline unsigned thread_count(std::size_t jobs) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("BESSEL_SD_THREADS")) {
        int cap = 0;
        const auto res = std::from_chars(env, env + std::char_traits<char>::length(env), cap);
        if (res.ec == std::errc() && cap > 0) n = std::min(n, static_cast<unsigned>(cap));
    }
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

/// Regime flags shared by eval, sweep and contour.
struct RegimeArgs {
    std::optional<double> t;
    std::optional<double> theta;
    std::optional<double> mu;

    void add(CLI::App& app, bool with_t) {
        auto* oth = app.add_option("--theta", theta, "monotonic parameter, t = y sin(theta)");
        auto* omu = app.add_option("--mu", mu, "oscillatory parameter, t = y cosh(mu)");
        oth->excludes(omu);
        if (with_t) app.add_option("--t", t, "imaginary part of the order")->excludes(oth)->excludes(omu);
    }

    [[nodiscard]] int given() const { return int(t.has_value()) + int(theta.has_value()) + int(mu.has_value()); }

    /// The regime at |t| and whether the result must be conjugated.
    [[nodiscard]] std::pair<RegimeSpec, bool> resolve(double y) const {
        if (theta) return {RegimeSpec::monotonic(y, *theta), false};
        if (mu) return {RegimeSpec::oscillatory(y, *mu), false};
        return {regime_from_physical(y, std::abs(*t)), *t < 0.0};
    }
};

struct Row {
    double y = 0.0;
    double t = 0.0;
    std::vector<EvalOutcome> outcomes;
    std::vector<double> residuals;
    std::vector<double> seconds;
};

inline double method_residual(Method m, double r, const RegimeSpec& regime, const EvalOutcome& value,
                              const EvalOutcome& reference) {
    if (m == Method::asym_monotonic) return residual_monotonic(r, regime.theta(), regime.y(), reference);
    if (m == Method::asym_oscillatory) return residual_oscillatory(r, regime.mu(), regime.y(), reference);
    return relative_difference(value.value, reference.value);
}

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(int argc, const char* const* argv) {
        CLI::App app{"Evaluate K_{r+it}(y) along saddle-point contours"};
        app.require_subcommand(1);
        app.set_version_flag("--version", std::string(kVersion));

        auto* eval = app.add_subcommand("eval", "evaluate K_nu(y) once");
        eval->add_option("--y", y_, "argument y > 0")->required();
        regime_.add(*eval, true);
        eval->add_option("--r", r_, "real part of the order");
        eval->add_option("--method", method_, "direct, series, steepest, thm13, prop33, asym_monotonic, asym_oscillatory or auto");
        eval->add_option("--tol", tol_, "target relative accuracy");

        auto* sweep = app.add_subcommand("sweep", "evaluate over a grid of y at fixed (r, theta) or (r, mu)");
        sweep->add_option("--y-min", y_min_, "first grid point");
        sweep->add_option("--y-max", y_max_, "last grid point");
        sweep->add_option("--y-count", y_count_, "number of grid points");
        sweep->add_flag("--linear", linear_, "linear instead of geometric spacing");
        sweep->add_option("--y-list", y_list_, "explicit comma-separated y values");
        regime_sweep_.add(*sweep, false);
        sweep->add_option("--r", r_, "real part of the order");
        sweep->add_option("--methods", methods_, "comma-separated methods; the first is the reference")->required();
        sweep->add_option("--tol", tol_, "target relative accuracy");
        sweep->add_flag("--timings", timings_, "append wall-clock seconds per method");

        auto* cont = app.add_subcommand("contour", "dump steepest-descent contour points as CSV");
        cont->add_option("--theta", c_theta_, "monotonic parameter");
        cont->add_option("--mu", c_mu_, "oscillatory parameter");
        cont->add_option("--branch", branch_, "all, mono_main, arc_lower, arc_upper or tail");
        cont->add_option("--points", points_, "points per branch");
        cont->add_option("--u-span", u_span_, "half-width of the monotonic dump and length of the tail");

        auto* val = app.add_subcommand("validate", "run the acceptance suite");
        val->add_flag("--fast", fast_, "restricted grids; slow criteria are skipped");
        val->add_option("--inject-chi-offset", chi_offset_, "perturb chi in the oscillatory evaluators (fault injection)");

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out_, err_);
            return code == 0 ? kOk : kBadArguments;
        }

        try {
            if (*eval) return cmd_eval();
            if (*sweep) return cmd_sweep();
            if (*cont) return cmd_contour();
            if (*val) return cmd_validate();
        } catch (const domain_error& e) {
            err_ << "error: " << e.what() << '\n';
            return kBadArguments;
        } catch (const precision_exhausted& e) {
            err_ << "precision exhausted: " << e.what() << '\n';
            return kPrecisionExhausted;
        } catch (const convergence_error& e) {
            err_ << "not converged: " << e.what() << '\n';
            return kNotConverged;
        }
        return kBadArguments;
    }

    static constexpr std::string_view kVersion = "1.0.0";

private:
    [[nodiscard]] EvaluatorConfig config() const {
        EvaluatorConfig cfg;
        cfg.tol_rel = tol_;
        cfg.validate();
        return cfg;
    }

    int cmd_eval() {
        if (regime_.given() != 1) {
            err_ << "error: give exactly one of --t, --theta, --mu\n";
            return kBadArguments;
        }
        const auto [regime, conj] = regime_.resolve(y_);
        Method m = default_method(regime);
        if (method_ != "auto") {
            const auto parsed = parse_method(method_);
            if (!parsed) {
                err_ << "error: unknown method '" << method_ << "'\n";
                return kBadArguments;
            }
            m = *parsed;
        }
        auto o = evaluate(r_, regime, m, config());
        if (conj) o = detail::conjugated(o);
        out_ << "method,y,r,t,log_modulus,phase,rel_error,evaluations,conjugated,near_boundary\n";
        out_ << to_string(o.method) << ',' << fmt(y_) << ',' << fmt(r_) << ',' << fmt(conj ? -regime.t() : regime.t())
             << ',' << fmt(o.value.log_abs()) << ',' << fmt(o.value.arg()) << ',' << fmt(o.relative_error()) << ','
             << o.evaluations << ',' << (o.conjugated ? 1 : 0) << ',' << (o.near_boundary ? 1 : 0) << '\n';
        if (o.near_boundary) err_ << "warning: theta within 1e-6 of pi/2 but not equal to it\n";
        return kOk;
    }

    [[nodiscard]] std::vector<double> y_grid() const {
        if (!y_list_.empty()) {
            std::vector<double> ys;
            for (const auto& s : split_list(y_list_)) {
                double v = 0.0;
                const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
                if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw domain_error("bad --y-list entry '" + s + "'");
                ys.push_back(v);
            }
            std::sort(ys.begin(), ys.end());
            return ys;
        }
        if (!y_min_ || !y_max_ || !(*y_min_ > 0.0) || !(*y_max_ >= *y_min_) || y_count_ < 1)
            throw domain_error("sweep needs --y-list or 0 < --y-min <= --y-max with --y-count >= 1");
        std::vector<double> ys;
        for (int i = 0; i < y_count_; ++i) {
            const double f = y_count_ == 1 ? 0.0 : static_cast<double>(i) / (y_count_ - 1);
            ys.push_back(linear_ ? *y_min_ + f * (*y_max_ - *y_min_)
                                 : *y_min_ * std::pow(*y_max_ / *y_min_, f));
        }
        return ys;
    }

    int cmd_sweep() {
        std::vector<Method> methods;
        for (const auto& s : split_list(methods_)) {
            const auto m = parse_method(s);
            if (!m) {
                err_ << "error: unknown method '" << s << "'\n";
                return kBadArguments;
            }
            methods.push_back(*m);
        }
        if (methods.empty()) {
            err_ << "error: --methods must name at least one method\n";
            return kBadArguments;
        }
        if (regime_sweep_.given() != 1) {
            err_ << "error: sweep needs exactly one of --theta, --mu\n";
            return kBadArguments;
        }
        const auto ys = y_grid();
        const auto cfg = config();
        (void)regime_sweep_.resolve(ys.front());

        std::vector<Row> rows(ys.size());
        std::vector<std::exception_ptr> failures(ys.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < ys.size(); i = next++) {
                try {
                    const auto regime = regime_sweep_.resolve(ys[i]).first;
                    Row row;
                    row.y = ys[i];
                    row.t = regime.t();
                    for (Method m : methods) {
                        const auto t0 = std::chrono::steady_clock::now();
                        row.outcomes.push_back(evaluate(r_, regime, m, cfg));
                        row.seconds.push_back(
                            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
                    }
                    for (std::size_t k = 1; k < methods.size(); ++k)
                        row.residuals.push_back(
                            method_residual(methods[k], r_, regime, row.outcomes[k], row.outcomes[0]));
                    rows[i] = std::move(row);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        };
        {
            std::vector<std::jthread> pool;
            const unsigned n = thread_count(ys.size());
            for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
        }

        out_ << "y,r,t,regime,param";
        for (Method m : methods) out_ << ',' << to_string(m) << "_log_modulus," << to_string(m) << "_phase," << to_string(m) << "_rel_error";
        for (std::size_t k = 1; k < methods.size(); ++k) out_ << ",residual_" << to_string(methods[k]);
        if (timings_)
            for (Method m : methods) out_ << ',' << to_string(m) << "_seconds";
        out_ << '\n';
        const bool mono = regime_sweep_.theta.has_value();
        const double param = mono ? *regime_sweep_.theta : *regime_sweep_.mu;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (failures[i]) std::rethrow_exception(failures[i]);
            const auto& row = rows[i];
            out_ << fmt(row.y) << ',' << fmt(r_) << ',' << fmt(row.t) << ',' << (mono ? "monotonic" : "oscillatory") << ','
                 << fmt(param);
            for (const auto& o : row.outcomes)
                out_ << ',' << fmt(o.value.log_abs()) << ',' << fmt(o.value.arg()) << ',' << fmt(o.relative_error());
            for (double res : row.residuals) out_ << ',' << fmt(res);
            if (timings_)
                for (double s : row.seconds) out_ << ',' << fmt(s);
            out_ << '\n';
        }
        return kOk;
    }

    int cmd_contour() {
        if (c_theta_.has_value() == c_mu_.has_value()) {
            err_ << "error: give exactly one of --theta, --mu\n";
            return kBadArguments;
        }
        if (points_ < 2) {
            err_ << "error: --points must be at least 2\n";
            return kBadArguments;
        }
        out_ << "branch,u,w,dw_du,psi,im_residual\n";
        auto emit = [&](const contour::ContourPoint& p, double psi, double residual) {
            out_ << contour::to_string(p.branch) << ',' << fmt(p.u) << ',' << fmt(p.w) << ','
                 << (p.dw_du ? fmt(*p.dw_du) : std::string("inf")) << ',' << fmt(psi) << ',' << fmt(residual) << '\n';
        };
        if (c_theta_) {
            if (branch_ != "all" && branch_ != "mono_main") throw domain_error("monotonic contours only have mono_main");
            const auto regime = RegimeSpec::monotonic(1.0, *c_theta_);
            const contour::MonotonicContour path(*c_theta_);
            for (const auto& p : contour::sample_monotonic(*c_theta_, std::max(points_, 3), u_span_))
                emit(p, path.height(p), contour::im_phase_residual(regime, p));
            return kOk;
        }
        const auto regime = RegimeSpec::oscillatory(1.0, *c_mu_);
        std::vector<contour::Branch> branches;
        if (branch_ == "all") {
            branches = {contour::Branch::arc_lower, contour::Branch::arc_upper, contour::Branch::tail};
        } else if (branch_ == "arc_lower") {
            branches = {contour::Branch::arc_lower};
        } else if (branch_ == "arc_upper") {
            branches = {contour::Branch::arc_upper};
        } else if (branch_ == "tail") {
            branches = {contour::Branch::tail};
        } else {
            throw domain_error("unknown oscillatory branch '" + branch_ + "'");
        }
        for (auto b : branches)
            for (const auto& p : contour::sample_case2(*c_mu_, b, points_, u_span_))
                emit(p, contour::psi_case2(*c_mu_, p), contour::im_phase_residual(regime, p));
        return kOk;
    }

    int cmd_validate() {
        validation::Options opt;
        opt.fast = fast_;
        opt.chi_offset = chi_offset_;
        const auto report = validation::run(opt, [this](const validation::CriterionResult& c) {
            err_ << "criterion " << c.id << ": " << (c.skipped ? "SKIPPED" : c.passed ? "PASS" : "FAIL") << "  "
                 << c.title;
            if (const auto* w = c.worst(); w && !c.skipped)
                err_ << "  [" << w->name << " = " << fmt(w->measured) << ", limit " << fmt(w->threshold) << "]";
            if (!c.error.empty()) err_ << "  error: " << c.error;
            err_ << '\n';
        });
        out_ << report_json(report, fast_).dump(2) << '\n';
        return report.all_passed() ? kOk : kValidationFailed;
    }

public:
    static nlohmann::json report_json(const validation::Report& report, bool fast) {
        using nlohmann::json;
        json criteria = json::array();
        for (const auto& c : report.criteria) {
            json checks = json::array();
            for (const auto& k : c.checks) {
                json jc = {{"name", k.name}, {"kind", k.kind}, {"measured", k.measured}, {"threshold", k.threshold},
                           {"passed", k.passed}};
                if (!k.sequence.empty()) jc["sequence"] = k.sequence;
                checks.push_back(jc);
            }
            json jc = {{"id", c.id},
                       {"title", c.title},
                       {"status", c.skipped ? "skipped" : c.passed ? "pass" : "fail"},
                       {"seconds", c.seconds},
                       {"checks", checks}};
            if (const auto* w = c.worst(); w && !c.skipped) {
                jc["measured"] = w->measured;
                jc["threshold"] = w->threshold;
            }
            if (c.time_limit > 0.0) jc["time_limit"] = c.time_limit;
            if (!c.error.empty()) jc["error"] = c.error;
            criteria.push_back(jc);
        }
        return {{"version", 1}, {"fast", fast}, {"passed", report.all_passed()}, {"seconds", report.seconds}, {"criteria", criteria}};
    }

private:
    std::ostream& out_;
    std::ostream& err_;

    double y_ = 0.0;
    double r_ = 0.0;
    double tol_ = 1e-12;
    std::string method_ = "auto";
    RegimeArgs regime_;

    std::optional<double> y_min_;
    std::optional<double> y_max_;
    int y_count_ = 0;
    bool linear_ = false;
    std::string y_list_;
    RegimeArgs regime_sweep_;
    std::string methods_;
    bool timings_ = false;

    std::optional<double> c_theta_;
    std::optional<double> c_mu_;
    std::string branch_ = "all";
    int points_ = 201;
    double u_span_ = 6.0;

    bool fast_ = false;
    double chi_offset_ = 0.0;
};

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    return Runner(out, err).run(argc, argv);
}

} // namespace bessel_sd::cli
