#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "bessel_sd/asymptotics.hpp"
#include "bessel_sd/evaluators.hpp"

namespace bessel_sd {

[[nodiscard]] inline Method default_method(const RegimeSpec& regime) noexcept {
    return regime.is_monotonic() ? Method::steepest_monotonic : Method::thm13;
}

[[nodiscard]] inline std::optional<Method> parse_method(std::string_view s) noexcept {
    for (Method m : {Method::direct, Method::series, Method::steepest_monotonic, Method::thm13, Method::prop33,
                     Method::asym_monotonic, Method::asym_oscillatory})
        if (to_string(m) == s) return m;
    if (s == "steepest_monotonic") return Method::steepest_monotonic;
    return std::nullopt;
}

/// K_{r + i t}(y) with t >= 0 given by the regime.
[[nodiscard]] inline EvalOutcome evaluate(double r, const RegimeSpec& regime, Method method,
                                          const EvaluatorConfig& cfg = {}) {
    const double y = regime.y();
    auto need = [&](bool ok) {
        if (!ok)
            throw domain_error("method " + std::string(to_string(method)) + " does not apply to the " +
                               (regime.is_monotonic() ? "monotonic" : "oscillatory") + " regime");
    };
    switch (method) {
    case Method::direct: return k_direct({r, regime.t()}, y, cfg);
    case Method::series: return k_series({r, regime.t()}, y, cfg);
    case Method::steepest_monotonic: need(regime.is_monotonic()); return k_monotonic_sd(r, regime.theta(), y, cfg);
    case Method::thm13: need(regime.is_oscillatory()); return k_oscillatory_thm13(r, regime.mu(), y, cfg);
    case Method::prop33: need(regime.is_oscillatory()); return k_oscillatory_prop33(r, regime.mu(), y, cfg);
    case Method::asym_monotonic: {
        need(regime.is_monotonic());
        EvalOutcome out;
        out.value = asym_monotonic(r, regime.theta(), y).value;
        out.method = method;
        out.near_boundary = theta_near_boundary(regime.theta());
        return out;
    }
    case Method::asym_oscillatory: {
        need(regime.is_oscillatory());
        EvalOutcome out;
        out.value = asym_oscillatory(r, regime.mu(), y).value;
        out.method = method;
        return out;
    }
    }
    throw domain_error("unknown method");
}

/// K_nu(y) for any sign of t; negative t is evaluated at |t| and conjugated.
[[nodiscard]] inline EvalOutcome evaluate(OrderSpec nu, double y, std::optional<Method> method = std::nullopt,
                                          const EvaluatorConfig& cfg = {}) {
    const OrderSpec folded = nu.folded();
    const RegimeSpec regime = regime_from_physical(y, folded.t);
    auto out = evaluate(folded.r, regime, method.value_or(default_method(regime)), cfg);
    if (nu.needs_conjugation()) out = detail::conjugated(out);
    return out;
}

} // namespace bessel_sd
