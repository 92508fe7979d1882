#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "bessel_sd_cli");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = bessel_sd::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        rows.push_back(fields);
    }
    return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    ADD_FAILURE() << "missing column " << name;
    return 0;
}

} // namespace

TEST(CliEval, DirectK0) {
    const auto r = run({"eval", "--y", "1", "--t", "0", "--method", "direct"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0][0], "method");
    EXPECT_EQ(rows[1][0], "direct");
    EXPECT_NEAR(std::stod(rows[1][column(rows[0], "log_modulus")]), std::log(0.42102443824070833334), 1e-14);
}

TEST(CliEval, SteepestPassThrough) {
    const auto r = run({"eval", "--y", "5", "--theta", "0.7853981633974483", "--method", "steepest", "--r", "0.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv(r.out);
    const auto direct = bessel_sd::k_monotonic_sd(0.5, 0.7853981633974483, 5.0);
    EXPECT_EQ(std::stod(rows[1][column(rows[0], "log_modulus")]), direct.value.log_abs());
    EXPECT_EQ(std::stod(rows[1][column(rows[0], "phase")]), direct.value.arg());
}

TEST(CliEval, NegativeOrderConjugates) {
    const auto r = run({"eval", "--y", "2", "--t", "-5", "--r", "0.3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv(r.out);
    EXPECT_EQ(rows[1][column(rows[0], "conjugated")], "1");
    EXPECT_NEAR(std::stod(rows[1][column(rows[0], "phase")]), 2.9982633316705895932, 1e-12);
}

TEST(CliEval, ArgumentErrorsExitTwo) {
    EXPECT_EQ(run({"eval", "--y", "10", "--mu", "0.0"}).code, 2);
    EXPECT_EQ(run({"eval", "--y", "-1", "--t", "1"}).code, 2);
    EXPECT_EQ(run({"eval", "--y", "1"}).code, 2);
    EXPECT_EQ(run({"eval", "--y", "1", "--t", "1", "--theta", "1"}).code, 2);
    EXPECT_EQ(run({"eval", "--y", "1", "--t", "3", "--method", "nope"}).code, 2);
    EXPECT_EQ(run({"eval", "--y", "1", "--theta", "1", "--method", "thm13"}).code, 2);
    EXPECT_EQ(run({"eval", "--y", "1", "--t", "1", "--tol", "2"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
}

TEST(CliEval, PrecisionExhaustedExitsThree) {
    const auto r = run({"eval", "--y", "50", "--t", "80", "--method", "series"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("precision"), std::string::npos);
}

TEST(CliHelp, ExitsZero) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("sweep"), std::string::npos);
}

TEST(CliSweep, EmptyMethodListExitsTwo) {
    EXPECT_EQ(run({"sweep", "--theta", "0.5", "--y-list", "1,2", "--methods", ""}).code, 2);
    EXPECT_EQ(run({"sweep", "--theta", "0.5", "--y-list", "1,2", "--methods", ","}).code, 2);
}

TEST(CliSweep, ColumnsAndResiduals) {
    const auto r = run({"sweep", "--mu", "1", "--r", "0", "--y-min", "10", "--y-max", "200", "--y-count", "4",
                        "--methods", "thm13,prop33,asym_oscillatory"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv(r.out);
    ASSERT_EQ(rows.size(), 5u);
    const auto& h = rows[0];
    EXPECT_EQ(h[0], "y");
    EXPECT_EQ(h.size(), 5u + 9u + 2u);
    const auto ic = column(h, "residual_prop33");
    const auto ia = column(h, "residual_asym_oscillatory");
    EXPECT_NEAR(std::stod(rows[1][0]), 10.0, 1e-12);
    EXPECT_NEAR(std::stod(rows[4][0]), 200.0, 1e-12);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i][3], "oscillatory");
        EXPECT_LE(std::stod(rows[i][ic]), 1e-11);
        EXPECT_LE(std::stod(rows[i][ia]), 0.1);
    }
    EXPECT_LE(std::stod(rows[4][ia]), 0.05);
}

TEST(CliSweep, TimingsAreOptIn) {
    const auto plain = run({"sweep", "--theta", "0.5", "--y-list", "3", "--methods", "steepest"});
    EXPECT_EQ(plain.out.find("_seconds"), std::string::npos);
    const auto timed = run({"sweep", "--theta", "0.5", "--y-list", "3", "--methods", "steepest", "--timings"});
    EXPECT_NE(timed.out.find("steepest_seconds"), std::string::npos);
}

TEST(CliSweep, ThreadCountDoesNotChangeOutput) {
    const std::vector<std::string> args = {"sweep", "--theta", "1.2", "--y-min", "1", "--y-max", "100",
                                           "--y-count", "9", "--methods", "steepest,direct,asym_monotonic"};
    ::setenv("BESSEL_SD_THREADS", "1", 1);
    const auto serial = run(args);
    ::setenv("BESSEL_SD_THREADS", "4", 1);
    const auto parallel = run(args);
    ::unsetenv("BESSEL_SD_THREADS");
    ASSERT_EQ(serial.code, 0) << serial.err;
    EXPECT_EQ(serial.out, parallel.out);
}

TEST(CliSweep, MethodRegimeMismatchExitsTwo) {
    EXPECT_EQ(run({"sweep", "--theta", "0.5", "--y-list", "3", "--methods", "thm13"}).code, 2);
}

TEST(CliContour, VerticalTangentPrintedAsInf) {
    const auto r = run({"contour", "--mu", "1", "--branch", "arc_upper", "--points", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv(r.out);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"branch", "u", "w", "dw_du", "psi", "im_residual"}));
    EXPECT_EQ(rows[5][3], "inf");
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(std::stod(rows[i][5]), 1e-12);
}

TEST(CliContour, AllBranchesAndMonotonic) {
    const auto osc = csv(run({"contour", "--mu", "0.7"}).out);
    EXPECT_EQ(osc.size(), 1u + 3u * 201u);
    const auto mono = csv(run({"contour", "--theta", "0.5", "--points", "11"}).out);
    EXPECT_EQ(mono.size(), 12u);
    EXPECT_EQ(mono[1][0], "mono_main");
    EXPECT_EQ(run({"contour", "--theta", "0.5", "--branch", "tail"}).code, 2);
    EXPECT_EQ(run({"contour", "--mu", "0.5", "--theta", "0.5"}).code, 2);
}

TEST(CliValidate, FastRunPassesAndEmitsJson) {
    const auto r = run({"validate", "--fast"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.at("passed").get<bool>());
    EXPECT_TRUE(j.at("fast").get<bool>());
    ASSERT_EQ(j.at("criteria").size(), 9u);
    EXPECT_EQ(j["criteria"][5]["status"], "skipped");
    EXPECT_NE(r.err.find("criterion 1: PASS"), std::string::npos);
}

TEST(CliValidate, InjectedFaultFails) {
    const auto r = run({"validate", "--fast", "--inject-chi-offset", "1e-3"});
    EXPECT_EQ(r.code, 1);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_FALSE(j.at("passed").get<bool>());
    EXPECT_EQ(j["criteria"][1]["status"], "fail");
}

TEST(CliSweep, MonotonicResidualDecreases) {
    const auto r = run({"sweep", "--theta", "0.5235987755982988", "--y-list", "25,50,100,200,400,800", "--methods",
                        "steepest,asym_monotonic"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv(r.out);
    const auto ic = column(rows[0], "residual_asym_monotonic");
    for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_LT(std::stod(rows[i][ic]), std::stod(rows[i - 1][ic]));
}

TEST(CliSweep, OscillatoryRepresentationsAgree) {
    const auto r = run({"sweep", "--mu", "1", "--y-min", "0.5", "--y-max", "300", "--y-count", "7", "--methods",
                        "thm13,prop33"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv(r.out);
    const auto ic = column(rows[0], "residual_prop33");
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(std::stod(rows[i][ic]), 1e-8);
}

TEST(CliContour, MonotonicSaddleRow) {
    const auto rows = csv(run({"contour", "--theta", "0.7853981633974483", "--points", "21"}).out);
    bool found = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (std::stod(rows[i][1]) != 0.0) continue;
        found = true;
        EXPECT_EQ(std::stod(rows[i][2]), 0.7853981633974483);
        EXPECT_EQ(std::stod(rows[i][3]), 0.0);
    }
    EXPECT_TRUE(found);
}

TEST(CliContour, ArcEndpointsShareMuMinus) {
    const auto rows = csv(run({"contour", "--mu", "2.302585092994046"}).out);
    double lower = 0.0, upper = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_LE(std::stod(rows[i][5]), 1e-10);
        const double w = std::stod(rows[i][2]);
        if (rows[i][0] == "arc_lower" && w == -bessel_sd::kHalfPi) lower = std::stod(rows[i][1]);
        if (rows[i][0] == "arc_upper" && w == bessel_sd::kThreeHalfPi) upper = std::stod(rows[i][1]);
    }
    EXPECT_NEAR(lower, 1.0682583645722184727, 1e-10);
    EXPECT_NEAR(upper, lower, 1e-10);
}

TEST(CliSweep, BitStableAcrossRuns) {
    const std::vector<std::string> args = {"sweep", "--mu", "0.3", "--y-min", "1", "--y-max", "50", "--y-count", "5",
                                           "--linear", "--methods", "thm13,series"};
    EXPECT_EQ(run(args).out, run(args).out);
}
