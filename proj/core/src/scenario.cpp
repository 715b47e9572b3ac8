#include "multitime/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>
#include <utility>

#include "json_io.hpp"

namespace multitime {

namespace jio = jsonio;
using jio::json;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ----------------------------- kind names -----------------------------------

const std::pair<const char*, ScenarioKind> kKindTable[] = {
    {"integrability", ScenarioKind::Integrability},
    {"path_independence", ScenarioKind::PathIndependence},
    {"diagonal_consistency", ScenarioKind::DiagonalConsistency},
    {"partition_feshbach", ScenarioKind::PartitionFeshbach},
    {"tensor_product", ScenarioKind::TensorProduct},
    {"spectrum", ScenarioKind::Spectrum},
};

ScenarioKind kind_from_string(const std::string& s) {
    for (const auto& [name, kind] : kKindTable) {
        if (s == name) return kind;
    }
    throw SchemaError("kind: unknown scenario kind '" + s + "'");
}

// --------------------------- number formatting ------------------------------

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ------------------------- scenario matrix specs ----------------------------

struct ParseContext {
    std::optional<std::uint64_t> seed;
};

std::uint64_t effective_seed(const json& j, const ParseContext& ctx, const std::string& where) {
    if (const json* s = jio::member_opt(j, "seed")) {
        if (!s->is_number_unsigned()) throw SchemaError(where + ".seed: expected an unsigned integer");
        return s->get<std::uint64_t>();
    }
    if (ctx.seed) return *ctx.seed;
    throw SchemaError(where + ": needs a 'seed' (none given at scenario level either)");
}

// Extended matrix spec: plain {"dim", "entries"}, {"pauli": "x|y|z"},
// {"identity": d}, {"zero": d}, {"kron": [spec, ...]},
// {"random_hermitian": {"dim": d, "seed": s?}}.
Operator matrix_spec_from(const json& j, const ParseContext& ctx, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where + ": expected a matrix object");
    if (const json* p = jio::member_opt(j, "pauli")) {
        if (!p->is_string()) throw SchemaError(where + ".pauli: expected \"x\", \"y\" or \"z\"");
        const std::string axis = p->get<std::string>();
        if (axis == "x") return pauli_x();
        if (axis == "y") return pauli_y();
        if (axis == "z") return pauli_z();
        throw SchemaError(where + ".pauli: unknown axis '" + axis + "'");
    }
    if (const json* d = jio::member_opt(j, "identity")) {
        return Operator::identity(jio::as_index(*d, where + ".identity"));
    }
    if (const json* d = jio::member_opt(j, "zero")) {
        return Operator::zero(jio::as_index(*d, where + ".zero"));
    }
    if (const json* factors = jio::member_opt(j, "kron")) {
        if (!factors->is_array() || factors->size() < 2) {
            throw SchemaError(where + ".kron: expected at least two factors");
        }
        Operator acc = matrix_spec_from((*factors)[0], ctx, where + ".kron[0]");
        for (std::size_t i = 1; i < factors->size(); ++i) {
            acc = tensor(acc, matrix_spec_from((*factors)[i], ctx,
                                               where + ".kron[" + std::to_string(i) + "]"));
        }
        return acc;
    }
    if (const json* r = jio::member_opt(j, "random_hermitian")) {
        const Index dim = jio::as_index(jio::member(*r, "dim", where + ".random_hermitian"),
                                        where + ".random_hermitian.dim");
        return random_hermitian(dim, effective_seed(*r, ctx, where + ".random_hermitian"));
    }
    return jio::matrix_from(j, where);
}

jio::MatrixParser spec_parser(const ParseContext& ctx) {
    return [&ctx](const json& j, const std::string& where) {
        return matrix_spec_from(j, ctx, where);
    };
}

// Projector spec: {"matrix": spec}, {"basis": [state, ...]},
// {"random_basis": {"dim": d, "rank": k, "seed": s?}} (first k eigenvectors of
// a seeded random Hermitian matrix).
Projector projector_spec_from(const json& j, const ParseContext& ctx, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where + ": expected a projector object");
    if (const json* m = jio::member_opt(j, "matrix")) {
        try {
            return Projector::from_operator(matrix_spec_from(*m, ctx, where + ".matrix"));
        } catch (const Error& e) {
            throw SchemaError(where + ".matrix: " + e.what());
        }
    }
    if (const json* basis = jio::member_opt(j, "basis")) {
        if (!basis->is_array() || basis->empty()) {
            throw SchemaError(where + ".basis: expected a non-empty array of columns");
        }
        std::vector<StateVector> columns;
        for (std::size_t i = 0; i < basis->size(); ++i) {
            columns.push_back(
                jio::state_from((*basis)[i], where + ".basis[" + std::to_string(i) + "]"));
        }
        return projector_from_basis(columns);
    }
    if (const json* r = jio::member_opt(j, "random_basis")) {
        const std::string rw = where + ".random_basis";
        const Index dim = jio::as_index(jio::member(*r, "dim", rw), rw + ".dim");
        const Index rank = jio::as_index(jio::member(*r, "rank", rw), rw + ".rank");
        if (rank < 1 || rank > dim) throw SchemaError(rw + ".rank: must be in [1, dim]");
        const Operator source = random_hermitian(dim, effective_seed(*r, ctx, rw));
        const auto pairs = eigendecompose(source);
        std::vector<StateVector> columns;
        for (Index i = 0; i < rank; ++i) columns.push_back(pairs[static_cast<std::size_t>(i)].vector);
        return projector_from_basis(columns);
    }
    throw SchemaError(where + ": expected 'matrix', 'basis' or 'random_basis'");
}

std::optional<double> opt_number(const json& j, const char* key, const std::string& where) {
    if (const json* v = jio::member_opt(j, key)) {
        return jio::as_number(*v, where + "." + key);
    }
    return std::nullopt;
}

// ----------------------------- payload parsing ------------------------------

IntegrabilityPayload integrability_from(const json& j, const ParseContext& ctx) {
    HamiltonianFamily family =
        jio::family_from(jio::member(j, "family", "payload"), "payload.family", spec_parser(ctx));
    const json& samples_j = jio::member(j, "samples", "payload");
    if (!samples_j.is_array() || samples_j.empty()) {
        throw SchemaError("payload.samples: expected a non-empty array of time tuples");
    }
    std::vector<std::vector<double>> samples;
    for (std::size_t i = 0; i < samples_j.size(); ++i) {
        samples.push_back(
            jio::real_vector_from(samples_j[i], "payload.samples[" + std::to_string(i) + "]"));
    }
    return {std::move(family), std::move(samples), opt_number(j, "expected_max_residual", "payload")};
}

PathIndependencePayload path_independence_from(const json& j, const ParseContext& ctx) {
    HamiltonianFamily family =
        jio::family_from(jio::member(j, "family", "payload"), "payload.family", spec_parser(ctx));
    const json& init = jio::member(j, "initial", "payload");
    MultiTimeState initial{
        jio::state_from(jio::member(init, "state", "payload.initial"), "payload.initial.state"),
        jio::real_vector_from(jio::member(init, "times", "payload.initial"),
                              "payload.initial.times")};
    TimePath path_a = jio::path_from(jio::member(j, "path_a", "payload"), "payload.path_a");
    TimePath path_b = jio::path_from(jio::member(j, "path_b", "payload"), "payload.path_b");
    return {std::move(family), std::move(initial), std::move(path_a), std::move(path_b),
            opt_number(j, "expected_residual", "payload")};
}

DiagonalConsistencyPayload diagonal_consistency_from(const json& j, const ParseContext& ctx) {
    HamiltonianFamily family =
        jio::family_from(jio::member(j, "family", "payload"), "payload.family", spec_parser(ctx));
    StateVector initial =
        jio::state_from(jio::member(j, "initial_state", "payload"), "payload.initial_state");
    const double t = jio::as_number(jio::member(j, "t", "payload"), "payload.t");
    const auto steps = static_cast<int>(jio::as_index(jio::member(j, "steps", "payload"), "payload.steps"));
    if (steps < 1) throw SchemaError("payload.steps: must be >= 1");
    return {std::move(family), std::move(initial), t, steps, opt_number(j, "expected_gap", "payload")};
}

PartitionFeshbachPayload partition_feshbach_from(const json& j, const ParseContext& ctx) {
    Operator h = matrix_spec_from(jio::member(j, "h", "payload"), ctx, "payload.h");
    Projector p_a = projector_spec_from(jio::member(j, "projector", "payload"), ctx, "payload.projector");
    std::optional<DiracFrenkelProbe> df;
    if (const json* probe = jio::member_opt(j, "dirac_frenkel")) {
        df = DiracFrenkelProbe{
            jio::state_from(jio::member(*probe, "psi", "payload.dirac_frenkel"),
                            "payload.dirac_frenkel.psi"),
            jio::as_number(jio::member(*probe, "expected", "payload.dirac_frenkel"),
                           "payload.dirac_frenkel.expected")};
    }
    return {std::move(h), std::move(p_a), std::move(df),
            opt_number(j, "negative_control_min_gap", "payload")};
}

TensorProductPayload tensor_product_from(const json& j, const ParseContext& ctx) {
    Operator h_a = matrix_spec_from(jio::member(j, "h_a", "payload"), ctx, "payload.h_a");
    Operator h_b = matrix_spec_from(jio::member(j, "h_b", "payload"), ctx, "payload.h_b");
    const json* inter = jio::member_opt(j, "interaction");
    Operator interaction = (inter == nullptr) ? Operator::zero(h_a.dim() * h_b.dim())
                                              : matrix_spec_from(*inter, ctx, "payload.interaction");
    TensorDecomposition dec(std::move(h_a), std::move(h_b), std::move(interaction));
    StateVector psi_a = jio::state_from(jio::member(j, "psi_a", "payload"), "payload.psi_a");
    StateVector psi_b = jio::state_from(jio::member(j, "psi_b", "payload"), "payload.psi_b");
    std::vector<double> grid =
        jio::real_vector_from(jio::member(j, "t_grid", "payload"), "payload.t_grid");
    if (grid.empty()) throw SchemaError("payload.t_grid: expected at least one grid point");

    std::optional<std::vector<std::optional<double>>> expected_entropies;
    if (const json* exp_j = jio::member_opt(j, "expected_entropies")) {
        if (!exp_j->is_array() || exp_j->size() != grid.size()) {
            throw SchemaError("payload.expected_entropies: expected one entry per grid point");
        }
        std::vector<std::optional<double>> values;
        for (std::size_t i = 0; i < exp_j->size(); ++i) {
            const json& v = (*exp_j)[i];
            if (v.is_null()) {
                values.emplace_back(std::nullopt);
            } else {
                values.emplace_back(
                    jio::as_number(v, "payload.expected_entropies[" + std::to_string(i) + "]"));
            }
        }
        expected_entropies = std::move(values);
    }
    std::optional<FirstOrderProbe> first_order;
    if (const json* fo = jio::member_opt(j, "first_order")) {
        first_order = FirstOrderProbe{
            jio::as_number(jio::member(*fo, "t", "payload.first_order"), "payload.first_order.t"),
            jio::as_number(jio::member(*fo, "expected", "payload.first_order"),
                           "payload.first_order.expected")};
    }
    return {std::move(dec), std::move(psi_a), std::move(psi_b), std::move(grid),
            std::move(expected_entropies), std::move(first_order)};
}

SpectrumPayload spectrum_from(const json& j, const ParseContext& ctx) {
    Operator h = matrix_spec_from(jio::member(j, "h", "payload"), ctx, "payload.h");
    std::optional<bool> expect_hermitian;
    if (const json* e = jio::member_opt(j, "expect_hermitian")) {
        if (!e->is_boolean()) throw SchemaError("payload.expect_hermitian: expected a boolean");
        expect_hermitian = e->get<bool>();
    }
    std::optional<StateVector> psi0;
    if (const json* p = jio::member_opt(j, "psi0")) {
        psi0 = jio::state_from(*p, "payload.psi0");
    }
    std::vector<double> grid;
    if (const json* g = jio::member_opt(j, "t_grid")) {
        grid = jio::real_vector_from(*g, "payload.t_grid");
    }
    std::optional<std::vector<double>> expected;
    if (const json* e = jio::member_opt(j, "expected_squared_norms")) {
        expected = jio::real_vector_from(*e, "payload.expected_squared_norms");
        if (expected->size() != grid.size()) {
            throw SchemaError("payload.expected_squared_norms: expected one entry per grid point");
        }
    }
    return {std::move(h), expect_hermitian, std::move(psi0), std::move(grid), std::move(expected)};
}

// ------------------------------ gate checks ---------------------------------

void gate_or_refuse(const Operator& op, const std::string& label, bool allowed) {
    const GateResult gate = schroedinger_picture_gate(op);
    if (gate.admits() || allowed) return;
    throw GateRefusal("non-Hermitian matrix '" + label + "' (hermiticity defect " +
                      fmt6(gate.report.hermiticity_defect) +
                      "); pass --allow-non-hermitian to study non-unitary evolution");
}

void gate_family(const HamiltonianFamily& family, const std::string& label, bool allowed) {
    for (int m = 0; m < family.n_times(); ++m) {
        const auto& terms = family.member(m).terms();
        for (std::size_t i = 0; i < terms.size(); ++i) {
            gate_or_refuse(terms[i].op,
                           label + ".members[" + std::to_string(m) + "].terms[" +
                               std::to_string(i) + "].op",
                           allowed);
        }
    }
}

void apply_gate(const Scenario& scenario, bool cli_allowed) {
    // File-level overrides are honored only for spectrum scenarios; the
    // unitary-formalism kinds require the explicit CLI flag.
    const bool spectrum_allowed =
        cli_allowed || (scenario.kind == ScenarioKind::Spectrum && scenario.allow_non_hermitian);
    std::visit(
        [&](const auto& payload) {
            using T = std::decay_t<decltype(payload)>;
            if constexpr (std::is_same_v<T, IntegrabilityPayload> ||
                          std::is_same_v<T, PathIndependencePayload> ||
                          std::is_same_v<T, DiagonalConsistencyPayload>) {
                gate_family(payload.family, "payload.family", cli_allowed);
            } else if constexpr (std::is_same_v<T, PartitionFeshbachPayload>) {
                gate_or_refuse(payload.h, "payload.h", cli_allowed);
            } else if constexpr (std::is_same_v<T, TensorProductPayload>) {
                gate_or_refuse(payload.dec.h_a(), "payload.h_a", cli_allowed);
                gate_or_refuse(payload.dec.h_b(), "payload.h_b", cli_allowed);
                gate_or_refuse(payload.dec.interaction(), "payload.interaction", cli_allowed);
            } else if constexpr (std::is_same_v<T, SpectrumPayload>) {
                gate_or_refuse(payload.h, "payload.h", spectrum_allowed);
            }
        },
        scenario.payload);
}

// ------------------------------ check battery -------------------------------

class CheckList {
public:
    explicit CheckList(const std::map<std::string, double>& overrides) : overrides_(overrides) {}

    double tolerance(const std::string& name, double fallback) const {
        const auto it = overrides_.find(name);
        return it == overrides_.end() ? fallback : it->second;
    }

    // passed iff value <= tolerance
    void bound(const std::string& name, double value, double default_tol, std::string detail) {
        const double tol = tolerance(name, default_tol);
        checks_.push_back({name, value, tol, value <= tol, std::move(detail)});
    }

    // |value - expected| or |value - expected| / |expected|, depending on mode
    void match(const std::string& name, double value, double expected, bool relative,
               double default_tol, const std::string& what) {
        const double deviation =
            relative ? std::abs(value - expected) / std::abs(expected) : std::abs(value - expected);
        bound(name, deviation, default_tol,
              what + " = " + fmt(value) + ", expected " + fmt(expected) +
                  (relative ? " (relative deviation)" : " (absolute deviation)"));
    }

    void failure(const std::string& name, std::string detail) {
        checks_.push_back({name, kNaN, 0.0, false, std::move(detail)});
    }

    std::vector<CheckResult> take() { return std::move(checks_); }

private:
    const std::map<std::string, double>& overrides_;
    std::vector<CheckResult> checks_;
};

std::string tuple_string(const std::vector<double>& t) {
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ", ";
        out += fmt6(t[i]);
    }
    return out + ")";
}

void run_integrability(const IntegrabilityPayload& p, CheckList& checks) {
    const IntegrabilityReport report = integrability_report(p.family, p.samples);
    std::string detail = "max residual over " + std::to_string(p.samples.size()) + " samples";
    if (report.argmax_j >= 0) {
        detail += "; argmax pair (" + std::to_string(report.argmax_j) + "," +
                  std::to_string(report.argmax_k) + ") at t=" + tuple_string(report.argmax_times);
    }
    if (p.expected_max_residual && *p.expected_max_residual != 0.0) {
        checks.match("max_residual_match", report.max_residual, *p.expected_max_residual,
                     /*relative=*/true, 1e-12, detail);
    } else {
        checks.bound("max_residual", report.max_residual, 1e-12, detail);
    }
}

void run_path_independence(const PathIndependencePayload& p, CheckList& checks) {
    const double residual = path_dependence_residual(p.family, p.initial, p.path_a, p.path_b);
    if (p.expected_residual && *p.expected_residual != 0.0) {
        checks.match("residual_match", residual, *p.expected_residual, /*relative=*/true, 0.05,
                     "path-difference norm");
    } else {
        checks.bound("residual", residual, 1e-10, "path-difference norm");
    }
    if (p.family.hermitian_required()) {
        const MultiTimeState end = propagate(p.family, p.initial, p.path_a);
        const double drift =
            std::abs(end.state.norm() - p.initial.state.norm()) / (1.0 + p.path_a.total_length());
        checks.bound("norm_preservation", drift, 1e-9, "norm drift per unit path length");
    }
}

void run_diagonal_consistency(const DiagonalConsistencyPayload& p, CheckList& checks) {
    const double gap = diagonal_consistency_gap(p.family, p.initial, p.t, p.steps);
    const std::string detail =
        "||psi_full - phi_multi|| at t=" + fmt6(p.t) + " with " + std::to_string(p.steps) + " steps";
    if (p.expected_gap && *p.expected_gap != 0.0) {
        checks.match("gap_match", gap, *p.expected_gap, /*relative=*/false, 1e-9, detail);
    } else {
        checks.bound("gap", gap, 1e-9, detail);
    }
}

void run_partition_feshbach(const PartitionFeshbachPayload& p, CheckList& checks) {
    const PartitionBlocks blocks = decompose(p.h, p.p_a);
    const double href = 1.0 + p.h.frobenius_norm();

    const double reassembly =
        (blocks.h_aa + blocks.h_ab + blocks.h_ba + blocks.h_bb - p.h).frobenius_norm() / href;
    checks.bound("reassembly", reassembly, 1e-12, "||H_AA+H_AB+H_BA+H_BB - H||_F / (1+||H||_F)");

    const double offdiag = (blocks.h_ab.adjoint() - blocks.h_ba).frobenius_norm() / href;
    checks.bound("offdiag_adjoint", offdiag, 1e-12, "||H_AB^dag - H_BA||_F / (1+||H||_F)");

    const double hf2 = p.h.frobenius_norm() * p.h.frobenius_norm();
    checks.bound("block_commutator", block_commutator_residual(blocks),
                 checks.tolerance("block_commutator", 1e-12) * std::max(hf2, 1.0),
                 "||[H_AA, H_BB]||_F against 1e-12*||H||_F^2");

    const std::vector<FeshbachEntry> entries = feshbach_eigenconsistency(p.h, p.p_a);
    double max_residual = 0.0;
    int ok = 0, small = 0, singular = 0;
    for (const auto& e : entries) {
        switch (e.status) {
            case FeshbachStatus::Ok:
                ++ok;
                max_residual = std::max(max_residual, e.residual);
                break;
            case FeshbachStatus::SmallComponent: ++small; break;
            case FeshbachStatus::ResolventSingular: ++singular; break;
        }
    }
    checks.bound("eigenconsistency", max_residual, 1e-8,
                 "max fixed-point residual over " + std::to_string(ok) + " eigenvalues (" +
                     std::to_string(small) + " with negligible A-component, " +
                     std::to_string(singular) + " with singular resolvent)");

    if (p.dirac_frenkel) {
        const double err = dirac_frenkel_error(p.h, p.p_a, p.dirac_frenkel->psi);
        if (p.dirac_frenkel->expected != 0.0) {
            checks.match("dirac_frenkel_match", err, p.dirac_frenkel->expected, /*relative=*/true,
                         1e-12, "||(I-P)H psi||");
        } else {
            checks.bound("dirac_frenkel_match", err, 1e-12, "||(I-P)H psi|| expected to vanish");
        }
    }
    if (p.negative_control_min_gap) {
        const double gap = projected_spectrum_min_gap(p.h, p.p_a);
        checks.bound("negative_control", std::max(0.0, *p.negative_control_min_gap - gap), 0.0,
                     "spec(H_AA) vs full spectrum: min gap " + fmt(gap) + ", required > " +
                         fmt6(*p.negative_control_min_gap));
    }
}

void run_tensor_product(const TensorProductPayload& p, CheckList& checks) {
    const std::vector<SweepPoint> sweep =
        interaction_entanglement_sweep(p.dec, p.psi_a, p.psi_b, p.t_grid);

    const Operator h = assemble(p.dec);
    const Vector psi0 =
        BipartiteState::product(p.psi_a, p.psi_b).amplitudes();
    double norm_dev = 0.0;
    for (const double t : p.t_grid) {
        const double n =
            (matrix_exponential(h, Complex(0.0, -t)).matrix() * psi0).norm();
        norm_dev = std::max(norm_dev, std::abs(n - 1.0));
    }
    checks.bound("unitarity", norm_dev, 1e-12, "max | ||exp(-iHt)psi0|| - 1 | over the grid");

    const double cap = std::log(static_cast<double>(std::min(p.dec.dim_a(), p.dec.dim_b())));
    double bound_excess = 0.0;
    double max_residual = 0.0;
    double max_entropy = 0.0;
    for (const auto& pt : sweep) {
        bound_excess = std::max(bound_excess, pt.entropy - cap);
        max_residual = std::max(max_residual, pt.residual);
        max_entropy = std::max(max_entropy, pt.entropy);
    }
    checks.bound("entropy_bound", std::max(0.0, bound_excess), 1e-12,
                 "max entropy excess over ln(min(d_a, d_b))");

    if (p.dec.interaction().frobenius_norm() == 0.0) {
        checks.bound("residual_zero", max_residual, 1e-12,
                     "max product-ansatz residual (no interaction)");
        checks.bound("entropy_zero", max_entropy, 1e-10, "max entanglement entropy (no interaction)");
    }
    if (p.expected_entropies) {
        double dev = 0.0;
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            const auto& expected = (*p.expected_entropies)[i];
            if (expected) dev = std::max(dev, std::abs(sweep[i].entropy - *expected));
        }
        checks.bound("entropy_match", dev, 1e-9, "max |entropy - expected| over pinned grid points");
    }
    if (p.first_order) {
        const double r = product_ansatz_residual(p.dec, p.psi_a, p.psi_b, p.first_order->t);
        checks.match("first_order_match", r / p.first_order->t, p.first_order->expected,
                     /*relative=*/true, 0.05, "residual/t at t=" + fmt6(p.first_order->t));
    }
}

void run_spectrum(const SpectrumPayload& p, CheckList& checks) {
    const SpectralReport report = spectral_report(p.h);
    if (p.expect_hermitian) {
        checks.bound("hermiticity_expected", report.hermitian == *p.expect_hermitian ? 0.0 : 1.0,
                     0.5,
                     std::string("hermitian = ") + (report.hermitian ? "true" : "false") +
                         ", defect " + fmt6(report.hermiticity_defect) + ", max |Im lambda| " +
                         fmt6(report.max_imag));
    }
    if (p.psi0 && !p.t_grid.empty()) {
        const auto curve = norm_decay_curve(p.h, *p.psi0, p.t_grid);
        if (p.expected_squared_norms) {
            double dev = 0.0;
            for (std::size_t i = 0; i < curve.size(); ++i) {
                dev = std::max(dev, std::abs(curve[i].second - (*p.expected_squared_norms)[i]));
            }
            checks.bound("decay_match", dev, 1e-10, "max |squared norm - expected| over the grid");
        } else if (report.hermitian) {
            double dev = 0.0;
            for (const auto& [t, n2] : curve) dev = std::max(dev, std::abs(n2 - 1.0));
            checks.bound("norm_constancy", dev, 1e-10, "max |squared norm - 1| over the grid");
        }
    }
}

}  // namespace

std::string to_string(ScenarioKind kind) {
    for (const auto& [name, k] : kKindTable) {
        if (k == kind) return name;
    }
    return "unknown";
}

// ------------------------------ load_scenario -------------------------------

Scenario load_scenario(const std::filesystem::path& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();

    json j;
    try {
        j = json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw SchemaError(path.string() + ": expected a top-level object");

    const json& version = jio::member(j, "schema_version", "scenario");
    if (!version.is_number_integer() || version.get<int>() != 1) {
        throw SchemaError("schema_version: only version 1 is supported");
    }

    std::string name = path.stem().string();
    if (const json* name_j = jio::member_opt(j, "name")) {
        if (!name_j->is_string()) throw SchemaError("name: expected a string");
        name = name_j->get<std::string>();
    }
    const json& kind_j = jio::member(j, "kind", "scenario");
    if (!kind_j.is_string()) throw SchemaError("kind: expected a string");
    const ScenarioKind kind = kind_from_string(kind_j.get<std::string>());

    std::optional<std::uint64_t> seed;
    if (const json* seed_j = jio::member_opt(j, "seed")) {
        if (!seed_j->is_number_unsigned()) throw SchemaError("seed: expected an unsigned integer");
        seed = seed_j->get<std::uint64_t>();
    }
    if (options.seed_override) seed = *options.seed_override;

    std::map<std::string, double> tolerances;
    if (const json* tols = jio::member_opt(j, "tolerances")) {
        if (!tols->is_object()) throw SchemaError("tolerances: expected an object");
        for (const auto& [key, value] : tols->items()) {
            tolerances[key] = jio::as_number(value, "tolerances." + key);
        }
    }
    bool allow_non_hermitian = false;
    if (const json* allow = jio::member_opt(j, "allow_non_hermitian")) {
        if (!allow->is_boolean()) throw SchemaError("allow_non_hermitian: expected a boolean");
        allow_non_hermitian = allow->get<bool>();
    }

    const json& payload_j = jio::member(j, "payload", "scenario");
    const ParseContext ctx{seed};
    const auto parse_payload = [&]() -> ScenarioPayload {
        switch (kind) {
            case ScenarioKind::Integrability: return integrability_from(payload_j, ctx);
            case ScenarioKind::PathIndependence: return path_independence_from(payload_j, ctx);
            case ScenarioKind::DiagonalConsistency: return diagonal_consistency_from(payload_j, ctx);
            case ScenarioKind::PartitionFeshbach: return partition_feshbach_from(payload_j, ctx);
            case ScenarioKind::TensorProduct: return tensor_product_from(payload_j, ctx);
            case ScenarioKind::Spectrum: break;
        }
        return spectrum_from(payload_j, ctx);
    };

    Scenario scenario{std::move(name), kind,  seed, std::move(tolerances),
                      allow_non_hermitian,    parse_payload()};
    apply_gate(scenario, options.allow_non_hermitian);
    return scenario;
}

// ------------------------------ run_scenario --------------------------------

Report run_scenario(const Scenario& scenario) {
    const auto start = std::chrono::steady_clock::now();
    CheckList checks(scenario.tolerances);
    try {
        std::visit(
            [&checks](const auto& payload) {
                using T = std::decay_t<decltype(payload)>;
                if constexpr (std::is_same_v<T, IntegrabilityPayload>) {
                    run_integrability(payload, checks);
                } else if constexpr (std::is_same_v<T, PathIndependencePayload>) {
                    run_path_independence(payload, checks);
                } else if constexpr (std::is_same_v<T, DiagonalConsistencyPayload>) {
                    run_diagonal_consistency(payload, checks);
                } else if constexpr (std::is_same_v<T, PartitionFeshbachPayload>) {
                    run_partition_feshbach(payload, checks);
                } else if constexpr (std::is_same_v<T, TensorProductPayload>) {
                    run_tensor_product(payload, checks);
                } else if constexpr (std::is_same_v<T, SpectrumPayload>) {
                    run_spectrum(payload, checks);
                }
            },
            scenario.payload);
    } catch (const std::exception& e) {
        checks.failure("execution", e.what());
    }

    Report report;
    report.scenario_name = scenario.name;
    report.checks = checks.take();
    report.overall_passed = std::all_of(report.checks.begin(), report.checks.end(),
                                        [](const CheckResult& c) { return c.passed; });
    report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    report.tool_version = kToolVersion;
    return report;
}

// ------------------------------ report output -------------------------------

std::string report_to_json(const Report& report) {
    ordered_json j;
    j["scenario_name"] = report.scenario_name;
    j["tool_version"] = report.tool_version;
    j["overall_passed"] = report.overall_passed;
    j["runtime_ms"] = report.runtime_ms;
    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["value"] = c.value;
        cj["tolerance"] = c.tolerance;
        cj["passed"] = c.passed;
        cj["detail"] = c.detail;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
    Report report;
    report.scenario_name = jio::member(j, "scenario_name", "report").get<std::string>();
    report.tool_version = jio::member(j, "tool_version", "report").get<std::string>();
    report.overall_passed = jio::member(j, "overall_passed", "report").get<bool>();
    report.runtime_ms = jio::member(j, "runtime_ms", "report").get<std::int64_t>();
    for (const auto& cj : jio::member(j, "checks", "report")) {
        CheckResult c;
        c.name = jio::member(cj, "name", "report.checks").get<std::string>();
        const json& value = jio::member(cj, "value", "report.checks");
        c.value = value.is_null() ? kNaN : value.get<double>();
        c.tolerance = jio::member(cj, "tolerance", "report.checks").get<double>();
        c.passed = jio::member(cj, "passed", "report.checks").get<bool>();
        c.detail = jio::member(cj, "detail", "report.checks").get<std::string>();
        report.checks.push_back(std::move(c));
    }
    return report;
}

void emit_report(const Report& report, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::Json) {
        out << report_to_json(report);
        return;
    }
    out << "name,value,tolerance,passed\n";
    for (const auto& c : report.checks) {
        out << c.name << ',' << fmt(c.value) << ',' << fmt(c.tolerance) << ','
            << (c.passed ? "true" : "false") << '\n';
    }
}

void emit_report(const Report& report, ReportFormat format,
                 const std::filesystem::path& destination) {
    std::ofstream out(destination);
    if (!out) throw IoError("cannot write report to " + destination.string());
    emit_report(report, format, out);
    out.flush();
    if (!out) throw IoError("failed while writing report to " + destination.string());
}

// -------------------------------- run_suite ---------------------------------

SuiteResult run_suite(const std::filesystem::path& directory, int parallelism,
                      const LoadOptions& options) {
    if (parallelism < 1) throw Error("run_suite: parallelism must be >= 1");
    if (!std::filesystem::is_directory(directory)) {
        throw IoError("run_suite: not a directory: " + directory.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(directory)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    SuiteResult result;
    if (files.empty()) {
        result.warnings.push_back("no scenario files found in " + directory.string());
        return result;
    }

    result.reports.resize(files.size());
    std::vector<unsigned char> load_errors(files.size(), 0);  // not vector<bool>: workers share words
    std::atomic<std::size_t> next{0};

    const auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1)) {
            try {
                const Scenario scenario = load_scenario(files[i], options);
                result.reports[i] = run_scenario(scenario);
            } catch (const std::exception& e) {
                Report failed;
                failed.scenario_name = files[i].stem().string();
                failed.checks.push_back({"load", kNaN, 0.0, false, e.what()});
                failed.overall_passed = false;
                failed.tool_version = kToolVersion;
                result.reports[i] = std::move(failed);
                load_errors[i] = 1;
            }
        }
    };

    const int jobs = std::min<int>(parallelism, static_cast<int>(files.size()));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(jobs));
        for (int i = 0; i < jobs; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    result.had_load_error =
        std::any_of(load_errors.begin(), load_errors.end(), [](unsigned char b) { return b != 0; });
    const bool all_passed = std::all_of(result.reports.begin(), result.reports.end(),
                                        [](const Report& r) { return r.overall_passed; });
    result.exit_status = result.had_load_error ? 2 : (all_passed ? 0 : 1);
    return result;
}

}  // namespace multitime
