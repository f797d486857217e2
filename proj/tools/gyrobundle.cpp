// gyrobundle: scenario runner and verification front end.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gyrobundle/runner.hpp"

namespace fs = std::filesystem;
using namespace gyrobundle;

namespace {

enum Exit { kPass = 0, kViolation = 1, kInputError = 2, kAbort = 3 };

struct Outcome {
    int code = kPass;
    std::string log;
};

Outcome run_one(const fs::path& file, const fs::path& out_dir) {
    Outcome o;
    std::ostringstream log;
    try {
        const Scenario sc = parse_scenario(file);
        const RunResult res = run(sc);
        write_outputs(out_dir, file.stem().string(), res);
        log << file.string() << ": " << (res.report.passed() ? "pass" : "FAIL") << "\n";
        for (const auto& v : res.report.violations) log << "  " << v << "\n";
        o.code = res.report.passed() ? kPass : kViolation;
    } catch (const ScenarioError& e) {
        log << e.what() << "\n";
        o.code = kInputError;
    } catch (const NumericalAbort& e) {
        log << file.string() << ": " << e.what() << "\n";
        o.code = kAbort;
    } catch (const std::exception& e) {
        log << file.string() << ": " << e.what() << "\n";
        o.code = kInputError;
    }
    o.log = log.str();
    return o;
}

int print_checks(const std::vector<CheckResult>& checks) {
    bool ok = true;
    std::cout << std::left << std::setw(34) << "check" << std::setw(26) << "max_residual"
              << std::setw(12) << "tolerance" << "result\n";
    for (const auto& c : checks) {
        std::ostringstream r, t;
        r << std::setprecision(6) << c.max_residual;
        t << std::setprecision(3) << c.tolerance;
        std::cout << std::left << std::setw(34) << c.name << std::setw(26) << r.str()
                  << std::setw(12) << t.str() << (c.passed() ? "PASS" : "FAIL") << "\n";
        ok = ok && c.passed();
    }
    return ok ? kPass : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spacecraft + VSCMG simulation and verification"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "run a scenario file (or a directory of them)");
    std::string scenario_file;
    std::string out_dir = "out";
    std::string batch_dir;
    run_cmd->add_option("scenario", scenario_file, "scenario file");
    run_cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
    run_cmd->add_option("--batch", batch_dir, "run every *.cfg in this directory concurrently");

    auto* verify_cmd = app.add_subcommand("verify", "seeded property/oracle sweep");
    std::uint64_t seed = 42;
    int trials = 10000;
    verify_cmd->add_option("--seed", seed)->capture_default_str();
    verify_cmd->add_option("--trials", trials)->capture_default_str()->check(CLI::PositiveNumber);

    auto* srj_cmd = app.add_subcommand("compare-srj", "per-term residuals against the SRJ form");
    srj_cmd->add_option("--seed", seed)->capture_default_str();
    srj_cmd->add_option("--trials", trials)->capture_default_str()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kInputError;
    }

    if (*run_cmd) {
        std::vector<fs::path> files;
        if (!scenario_file.empty()) files.emplace_back(scenario_file);
        if (!batch_dir.empty()) {
            std::error_code ec;
            std::vector<fs::path> found;
            for (const auto& e : fs::directory_iterator(batch_dir, ec)) {
                if (e.is_regular_file() && e.path().extension() == ".cfg") found.push_back(e.path());
            }
            if (ec) {
                std::cerr << batch_dir << ": " << ec.message() << "\n";
                return kInputError;
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        }
        if (files.empty()) {
            std::cerr << "run: no scenario given (pass a file or --batch dir)\n";
            return kInputError;
        }
        std::vector<std::future<Outcome>> jobs;
        for (const auto& f : files) {
            jobs.push_back(std::async(std::launch::async, run_one, f, fs::path(out_dir)));
        }
        int code = kPass;
        for (auto& j : jobs) {
            const Outcome o = j.get();
            std::cout << o.log;
            code = std::max(code, o.code);
        }
        return code;
    }

    if (*verify_cmd) {
        return print_checks(run_verification(seed, trials));
    }

    const DiagnosticReport r = compare_srj(seed, trials, nullptr);
    std::cout << std::left << std::setw(44) << "term" << "max_residual\n";
    for (const auto& [label, v] : r.term_residuals) {
        std::cout << std::left << std::setw(44) << label << std::setprecision(6) << v << "\n";
    }
    std::cout << std::left << std::setw(44) << "srj_vs_geometric" << *r.srj_residual_max << "\n"
              << (r.passed() ? "PASS" : "FAIL") << "\n";
    for (const auto& v : r.violations) std::cout << "  " << v << "\n";
    return r.passed() ? kPass : kViolation;
}
