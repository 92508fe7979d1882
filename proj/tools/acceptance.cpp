#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "bessel_sd/validation.hpp"

namespace {

void print(const bessel_sd::validation::CriterionResult& c) {
    std::printf("criterion %d: %s  %s", c.id, c.skipped ? "SKIPPED" : c.passed ? "PASS" : "FAIL", c.title.c_str());
    if (const auto* w = c.worst(); w && !c.skipped)
        std::printf("  [%s = %.3e, limit %.3e]", w->name.c_str(), w->measured, w->threshold);
    if (!c.error.empty()) std::printf("  error: %s", c.error.c_str());
    std::printf("  (%.3f s)\n", c.seconds);
    std::fflush(stdout);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance suite: one PASS/FAIL line per criterion"};
    int only = 0;
    bool verbose = false;
    bessel_sd::validation::Options opt;
    app.add_option("--criterion", only, "exit status reflects only this criterion (1-9)")->check(CLI::Range(1, 9));
    app.add_flag("--fast", opt.fast, "restricted grids; slow criteria are skipped");
    app.add_flag("-v,--verbose", verbose, "list every check");
    app.add_option("--inject-chi-offset", opt.chi_offset, "perturb chi (fault injection)");
    CLI11_PARSE(app, argc, argv);

    const auto report = bessel_sd::validation::run(opt, [&](const bessel_sd::validation::CriterionResult& c) {
        print(c);
        if (!verbose) return;
        for (const auto& k : c.checks)
            std::printf("    %-62s %.3e  limit %.3e  %s\n", k.name.c_str(), k.measured, k.threshold,
                        k.passed ? "ok" : "FAIL");
    });
    std::printf("total %.3f s\n", report.seconds);

    if (only == 0) return report.all_passed() ? 0 : 1;
    for (const auto& c : report.criteria)
        if (c.id == only) return c.skipped || c.passed ? 0 : 1;
    return 1;
}
