// scenario.hpp — Declarative scenario files, the per-kind check batteries,
// machine-readable reports, and the suite driver.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "multitime/partitions.hpp"
#include "multitime/propagation.hpp"
#include "multitime/spectra.hpp"
#include "multitime/tensorprod.hpp"
#include "multitime/timefield.hpp"

namespace multitime {

enum class ScenarioKind {
    Integrability,
    PathIndependence,
    DiagonalConsistency,
    PartitionFeshbach,
    TensorProduct,
    Spectrum,
};

std::string to_string(ScenarioKind kind);

// ------------------------------ payloads ------------------------------------

struct IntegrabilityPayload {
    HamiltonianFamily family;
    std::vector<std::vector<double>> samples;
    std::optional<double> expected_max_residual;
};

struct PathIndependencePayload {
    HamiltonianFamily family;
    MultiTimeState initial;
    TimePath path_a;
    TimePath path_b;
    std::optional<double> expected_residual;
};

struct DiagonalConsistencyPayload {
    HamiltonianFamily family;
    StateVector initial;
    double t;
    int steps;
    std::optional<double> expected_gap;
};

struct DiracFrenkelProbe {
    StateVector psi;
    double expected;
};

struct PartitionFeshbachPayload {
    Operator h;
    Projector p_a;
    std::optional<DiracFrenkelProbe> dirac_frenkel;
    std::optional<double> negative_control_min_gap;
};

struct FirstOrderProbe {
    double t;
    double expected;  // ||interaction * psi0||
};

struct TensorProductPayload {
    TensorDecomposition dec;
    StateVector psi_a;
    StateVector psi_b;
    std::vector<double> t_grid;
    std::optional<std::vector<std::optional<double>>> expected_entropies;
    std::optional<FirstOrderProbe> first_order;
};

struct SpectrumPayload {
    Operator h;
    std::optional<bool> expect_hermitian;
    std::optional<StateVector> psi0;
    std::vector<double> t_grid;
    std::optional<std::vector<double>> expected_squared_norms;
};

using ScenarioPayload =
    std::variant<IntegrabilityPayload, PathIndependencePayload, DiagonalConsistencyPayload,
                 PartitionFeshbachPayload, TensorProductPayload, SpectrumPayload>;

struct Scenario {
    std::string name;
    ScenarioKind kind;
    std::optional<std::uint64_t> seed;
    std::map<std::string, double> tolerances;
    bool allow_non_hermitian = false;  // file-level; honored for spectrum scenarios only
    ScenarioPayload payload;
};

// ------------------------------- reports ------------------------------------

struct CheckResult {
    std::string name;
    double value;
    double tolerance;
    bool passed;
    std::string detail;
};

struct Report {
    std::string scenario_name;
    std::vector<CheckResult> checks;
    bool overall_passed = false;
    std::int64_t runtime_ms = 0;
    std::string tool_version;
};

// ------------------------------ operations ----------------------------------

struct LoadOptions {
    // CLI gate override; lets any scenario kind run on non-Hermitian input.
    bool allow_non_hermitian = false;
    // Replaces the scenario-level seed before payload parsing.
    std::optional<std::uint64_t> seed_override;
};

// Parses, schema-validates and gate-checks a scenario file.
// Throws IoError, ParseError, SchemaError, GateRefusal.
Scenario load_scenario(const std::filesystem::path& path, const LoadOptions& options = {});

// Executes the kind's check battery. Module errors surface as failed checks
// with detail strings; deterministic for a fixed (scenario, seed, version).
Report run_scenario(const Scenario& scenario);

enum class ReportFormat { Json, Csv };

void emit_report(const Report& report, ReportFormat format, std::ostream& out);
void emit_report(const Report& report, ReportFormat format,
                 const std::filesystem::path& destination);  // throws IoError

std::string report_to_json(const Report& report);
Report report_from_json(const std::string& text);

struct SuiteResult {
    std::vector<Report> reports;  // ordered by scenario file name
    std::vector<std::string> warnings;
    bool had_load_error = false;
    // 0 all passed, 1 some check failed, 2 load/schema error
    int exit_status = 0;
};

// Runs every *.json scenario in the directory, up to `parallelism` at a time.
// A failure in one scenario never aborts the rest.
SuiteResult run_suite(const std::filesystem::path& directory, int parallelism,
                      const LoadOptions& options = {});

}  // namespace multitime
