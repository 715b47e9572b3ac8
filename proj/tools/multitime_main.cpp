// multitime_main.cpp — Scenario-driven CLI.
//
//   multitime run --scenario FILE [--out PATH] [--format json|csv]
//                 [--allow-non-hermitian] [--seed N]
//   multitime suite --dir PATH [--jobs N]
//
// Exit codes: 0 all checks passed, 1 some check failed, 2 load/schema error.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "multitime/config.hpp"
#include "multitime/scenario.hpp"

namespace {

int run_command(const std::string& scenario_path, const std::string& out_path,
                const std::string& format, bool allow_non_hermitian,
                std::optional<std::uint64_t> seed) {
    multitime::LoadOptions options;
    options.allow_non_hermitian = allow_non_hermitian;
    options.seed_override = seed;

    multitime::Report report;
    try {
        const multitime::Scenario scenario = multitime::load_scenario(scenario_path, options);
        report = multitime::run_scenario(scenario);
    } catch (const multitime::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const auto fmt = format == "csv" ? multitime::ReportFormat::Csv : multitime::ReportFormat::Json;
    try {
        if (out_path.empty()) {
            multitime::emit_report(report, fmt, std::cout);
        } else {
            multitime::emit_report(report, fmt, std::filesystem::path(out_path));
        }
    } catch (const multitime::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return report.overall_passed ? 0 : 1;
}

int suite_command(const std::string& dir, int jobs) {
    multitime::SuiteResult result;
    try {
        result = multitime::run_suite(dir, jobs);
    } catch (const multitime::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    for (const auto& warning : result.warnings) std::cerr << "warning: " << warning << "\n";
    int passed = 0;
    for (const auto& report : result.reports) {
        std::cout << (report.overall_passed ? "[PASS] " : "[FAIL] ") << report.scenario_name << " ("
                  << report.checks.size() << (report.checks.size() == 1 ? " check" : " checks")
                  << ")\n";
        if (!report.overall_passed) {
            for (const auto& check : report.checks) {
                if (!check.passed) {
                    std::cout << "       " << check.name << ": " << check.detail << "\n";
                }
            }
        }
        if (report.overall_passed) ++passed;
    }
    std::cout << passed << "/" << result.reports.size() << " scenarios passed\n";
    return result.exit_status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-dimensional laboratory for multi-time quantum evolution"};
    app.set_version_flag("--version", std::string(multitime::kToolVersion));
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_path;
    std::string format = "json";
    bool allow_non_hermitian = false;
    std::optional<std::uint64_t> seed;
    std::uint64_t seed_value = 0;

    CLI::App* run = app.add_subcommand("run", "Run a single scenario file");
    run->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    run->add_option("--out", out_path, "Report destination (default: stdout)");
    run->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    run->add_flag("--allow-non-hermitian", allow_non_hermitian,
                  "Run unitary-formalism checks on non-Hermitian inputs");
    CLI::Option* seed_opt = run->add_option("--seed", seed_value, "Override the scenario seed");

    std::string dir;
    int jobs = 1;
    CLI::App* suite = app.add_subcommand("suite", "Run every scenario in a directory");
    suite->add_option("--dir", dir, "Directory of scenario JSON files")->required();
    suite->add_option("--jobs", jobs, "Parallel scenario executions")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (seed_opt->count() > 0) seed = seed_value;
            return run_command(scenario_path, out_path, format, allow_non_hermitian, seed);
        }
        return suite_command(dir, jobs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
