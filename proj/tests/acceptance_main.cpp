// acceptance_main.cpp — End-to-end acceptance battery. Each criterion prints
// one PASS/FAIL line; the binary exits nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "multitime/partitions.hpp"
#include "multitime/propagation.hpp"
#include "multitime/scenario.hpp"
#include "multitime/spectra.hpp"
#include "multitime/tensorprod.hpp"
#include "support/oracles.hpp"

using namespace multitime;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, const std::function<void()>& body) {
    std::string message;
    try {
        body();
    } catch (const std::exception& e) {
        message = e.what();
    }
    if (message.empty()) {
        std::printf("[PASS] criterion %d: %s\n", number, title.c_str());
    } else {
        std::printf("[FAIL] criterion %d: %s\n         %s\n", number, title.c_str(),
                    message.c_str());
        ++failures;
    }
}

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw CheckFailure(what);
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

Projector seeded_projector(Index dim, Index rank, std::uint64_t seed) {
    const auto pairs = eigendecompose(random_hermitian(dim, seed));
    std::vector<StateVector> columns;
    for (Index i = 0; i < rank; ++i) columns.push_back(pairs[static_cast<std::size_t>(i)].vector);
    return projector_from_basis(columns);
}

StateVector basis_state(Index dim, Index k) {
    Vector v = Vector::Zero(dim);
    v(k) = 1.0;
    return StateVector(v);
}

HamiltonianFamily constant_family(const Operator& h1, const Operator& h2) {
    return HamiltonianFamily(
        {TimeDependentOperator::constant(2, h1), TimeDependentOperator::constant(2, h2)});
}

Operator coupled_2x2(double delta, double g) {
    Matrix h(2, 2);
    h << 0.0, g, g, delta;
    return Operator(std::move(h));
}

// ----------------------------- criteria bodies -------------------------------

void block_commutator_identity() {
    const Index dims[] = {4, 8, 16};
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 100; ++k) {
        const Index dim = dims[k % 3];
        const Operator h = random_hermitian(dim, 1000 + k);
        const Index rank = 1 + static_cast<Index>(k % static_cast<std::uint64_t>(dim - 1));
        const PartitionBlocks blocks = decompose(h, seeded_projector(dim, rank, 5000 + k));
        const double bound = 1e-12 * h.frobenius_norm() * h.frobenius_norm();
        const double residual = block_commutator_residual(blocks);
        worst = std::max(worst, residual / bound);
        require(residual <= bound, "pair " + std::to_string(k) + ": ||[H_AA,H_BB]||_F = " +
                                       num(residual) + " > " + num(bound));
    }
    require(worst >= 0.0, "unreachable");
}

void feshbach_fixed_point() {
    // pinned 2x2 family with the coordinate projector
    const Projector coord = projector_from_basis({basis_state(2, 0)});
    for (const auto& [delta, g] : std::vector<std::pair<double, double>>{{0.0, 1.0}, {1.0, 2.0}}) {
        for (const auto& e : feshbach_eigenconsistency(coupled_2x2(delta, g), coord)) {
            require(e.status == FeshbachStatus::Ok,
                    "pinned case should have clean entries at every eigenvalue");
            require(e.residual <= 1e-8, "pinned (" + num(delta) + "," + num(g) +
                                            "): residual " + num(e.residual));
        }
    }
    // hand-solved eigenvalues for (1, 2)
    const auto entries = feshbach_eigenconsistency(coupled_2x2(1.0, 2.0), coord);
    const double s = std::sqrt(17.0);
    require(std::abs(entries[0].energy - (1.0 - s) / 2) <= 1e-10 &&
                std::abs(entries[1].energy - (1.0 + s) / 2) <= 1e-10,
            "eigenvalues do not match (1 +- sqrt 17)/2 to 1e-10");

    // 50 seeded random Hermitian at dim 6 with rank-3 projectors
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Operator h = random_hermitian(6, 7000 + seed);
        const auto random_entries = feshbach_eigenconsistency(h, seeded_projector(6, 3, 7700 + seed));
        for (const auto& e : random_entries) {
            if (e.status != FeshbachStatus::Ok) continue;
            require(e.residual <= 1e-8, "seed " + std::to_string(seed) + ", E = " + num(e.energy) +
                                            ": residual " + num(e.residual));
        }
    }
}

void negative_control() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 1.0;
    const Operator h(m);
    const Projector coord = projector_from_basis({basis_state(2, 0)});
    const double gap = projected_spectrum_min_gap(h, coord);
    require(gap > 1e-3, "spec(H_AA) vs full spectrum min gap " + num(gap) + " not > 1e-3");
    const double eq3 = block_commutator_residual(decompose(h, coord));
    require(eq3 <= 1e-12 * h.frobenius_norm() * h.frobenius_norm(),
            "the block-commutator identity should still hold, got " + num(eq3));
}

void path_dependence_scaling() {
    const double t = 1e-3;
    const HamiltonianFamily violating = constant_family(pauli_x(), pauli_z());
    const MultiTimeState initial{basis_state(2, 0), {0.0, 0.0}};
    const TimePath a({0.0, 0.0}, {{0, t, 1}, {1, t, 1}});
    const TimePath b({0.0, 0.0}, {{1, t, 1}, {0, t, 1}});
    const double residual = path_dependence_residual(violating, initial, a, b);
    require(std::abs(residual - 2e-6) <= 0.05 * 2e-6,
            "sigma_x/sigma_z residual " + num(residual) + " not within 5% of 2e-6");

    const HamiltonianFamily commuting = constant_family(
        tensor(pauli_x(), Operator::identity(2)), tensor(Operator::identity(2), pauli_z()));
    const MultiTimeState initial4{basis_state(4, 0), {0.0, 0.0}};
    const TimePath a4({0.0, 0.0}, {{0, 0.8, 2}, {1, 1.1, 2}});
    const TimePath b4({0.0, 0.0}, {{1, 1.1, 2}, {0, 0.8, 2}});
    const double commuting_residual = path_dependence_residual(commuting, initial4, a4, b4);
    require(commuting_residual <= 1e-10,
            "commuting residual " + num(commuting_residual) + " not <= 1e-10");
}

void diagonal_consistency() {
    const HamiltonianFamily commuting = constant_family(
        tensor(pauli_x(), Operator::identity(2)), tensor(Operator::identity(2), pauli_z()));
    const double commuting_gap = diagonal_consistency_gap(commuting, basis_state(4, 0), 1.0, 1);
    require(commuting_gap <= 1e-9, "commuting gap " + num(commuting_gap) + " not <= 1e-9");

    const HamiltonianFamily violating = constant_family(pauli_x(), pauli_z());
    const double gap = diagonal_consistency_gap(violating, basis_state(2, 0), 1.0, 1);
    const Vector psi0 = basis_state(2, 0).amplitudes();
    const Vector full = oracles::series_evolve(pauli_x().matrix() + pauli_z().matrix(), psi0, 1.0);
    const Vector stair = oracles::series_evolve(
        pauli_z().matrix(), oracles::series_evolve(pauli_x().matrix(), psi0, 1.0), 1.0);
    const double oracle = (full - stair).norm();
    require(std::abs(gap - oracle) <= 1e-9,
            "gap " + num(gap) + " vs brute-force oracle " + num(oracle));
    require(gap > 0.1, "gap unexpectedly small: " + num(gap));
}

void interaction_obstruction() {
    // zero interaction across the grid
    const TensorDecomposition free_pair =
        TensorDecomposition::non_interacting(random_hermitian(2, 11), random_hermitian(2, 12));
    oracles::GaussianSource gen(13);
    const StateVector psi_a{gen.unit_vector(2)};
    const StateVector psi_b{gen.unit_vector(2)};
    for (int i = 0; i <= 10; ++i) {
        const double t = 0.1 * i;
        const double r = product_ansatz_residual(free_pair, psi_a, psi_b, t);
        require(r <= 1e-12, "t = " + num(t) + ": free residual " + num(r));
    }

    // 20 seeded unit-norm interactions: residual/t -> ||J psi0|| at t = 1e-3
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        oracles::GaussianSource source(9000 + seed);
        const Operator h_a{source.hermitian(2)};
        const Operator h_b{source.hermitian(2)};
        Matrix j = source.hermitian(4);
        j /= j.norm();
        const TensorDecomposition dec{h_a, h_b, Operator(j)};
        const StateVector pa{source.unit_vector(2)};
        const StateVector pb{source.unit_vector(2)};
        const Vector psi0 = BipartiteState::product(pa, pb).amplitudes();
        const double expected = (j * psi0).norm();
        const double t = 1e-3;
        const double slope = product_ansatz_residual(dec, pa, pb, t) / t;
        require(std::abs(slope - expected) <= 0.05 * expected,
                "seed " + std::to_string(seed) + ": slope " + num(slope) + " vs ||J psi0|| " +
                    num(expected));
    }

    // Bell entropy
    Vector bell(4);
    bell << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
    const double entropy = entanglement_entropy(BipartiteState(2, 2, bell));
    require(std::abs(entropy - std::numbers::ln2) <= 1e-9,
            "Bell entropy " + num(entropy) + " vs ln 2");
}

void non_hermitian_gate() {
    // refusal without override
    const fs::path tmp = fs::temp_directory_path() / "multitime_acceptance_gate.json";
    {
        std::ofstream out(tmp);
        out << R"({"schema_version": 1, "kind": "spectrum", "payload": {
                "h": {"dim": 2, "entries": [[[1.0,-0.5],[0.0,0.0]],[[0.0,0.0],[2.0,0.0]]]}}})";
    }
    bool refused = false;
    try {
        load_scenario(tmp);
    } catch (const GateRefusal&) {
        refused = true;
    }
    fs::remove(tmp);
    require(refused, "diag(1-0.5i, 2) was not refused without an override");

    // with override: Gamow decay at t = 1
    LoadOptions cli;
    cli.allow_non_hermitian = true;
    Matrix gamow = Matrix::Zero(1, 1);
    gamow(0, 0) = Complex(0.0, -0.5);
    Vector one(1);
    one << 1.0;
    const auto curve = norm_decay_curve(Operator(gamow), StateVector(one), {1.0});
    require(std::abs(curve[0].second - std::exp(-1.0)) <= 1e-10,
            "Gamow squared norm " + num(curve[0].second) + " vs exp(-1)");

    // Hermitian inputs hold the norm up to t = 100
    oracles::GaussianSource gen(21);
    const Operator h{gen.hermitian(4)};
    const StateVector psi0{gen.unit_vector(4)};
    for (const auto& [t, n2] : norm_decay_curve(h, psi0, {0.0, 1.0, 10.0, 50.0, 100.0})) {
        require(std::abs(n2 - 1.0) <= 1e-10,
                "t = " + num(t) + ": squared norm drift " + num(std::abs(n2 - 1.0)));
    }
}

void numerics_substrate() {
    // propagator unitarity
    oracles::GaussianSource gen(31);
    for (Index dim : {2, 8, 16}) {
        const Operator h{gen.hermitian(dim)};
        const Operator u = matrix_exponential(h, Complex(0.0, -1.7));
        const double defect =
            (u.matrix().adjoint() * u.matrix() - Matrix::Identity(dim, dim)).norm();
        require(defect <= 1e-12, "dim " + std::to_string(dim) + ": unitarity defect " + num(defect));
    }

    // midpoint substep halving gains at least 3x against a 10x-finer reference
    const TimeDependentOperator driven(1, 2,
                                       {{CoefficientFunction::sine(0, 1.0, 1.0), pauli_x()},
                                        {CoefficientFunction::cosine(0, 1.0, 1.0), pauli_z()}});
    const HamiltonianFamily family({driven});
    const StateVector psi0 = basis_state(2, 0);
    const auto evolve = [&](int steps) {
        return propagate(family, {psi0, {0.0}}, TimePath({0.0}, {{0, 1.0, steps}}))
            .state.amplitudes();
    };
    const Vector reference = evolve(400);
    const double coarse = (evolve(20) - reference).norm();
    const double fine = (evolve(40) - reference).norm();
    require(coarse / fine >= 3.0, "substep halving ratio " + num(coarse / fine) + " not >= 3");

    // semigroup property
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        oracles::GaussianSource source(500 + seed);
        for (const Matrix& m : {source.hermitian(6), source.matrix(6, 6)}) {
            const Operator h{m};
            const Complex s1(0.4, -0.3), s2(-0.2, 0.6);
            const Operator lhs = matrix_exponential(h, s1) * matrix_exponential(h, s2);
            const Operator rhs = matrix_exponential(h, s1 + s2);
            const double rel = (lhs - rhs).frobenius_norm() / rhs.frobenius_norm();
            require(rel <= 1e-10, "semigroup relative error " + num(rel));
        }
    }
}

void runner_determinism(const fs::path& golden_dir) {
    const SuiteResult first = run_suite(golden_dir, 2);
    require(first.exit_status == 0, "golden suite exit status " +
                                        std::to_string(first.exit_status) + " (expected 0)");
    const SuiteResult second = run_suite(golden_dir, 1);
    require(first.reports.size() == second.reports.size(), "report counts differ between runs");
    for (std::size_t i = 0; i < first.reports.size(); ++i) {
        Report a = first.reports[i];
        Report b = second.reports[i];
        a.runtime_ms = 0;
        b.runtime_ms = 0;
        require(report_to_json(a) == report_to_json(b),
                "report for " + a.scenario_name + " is not byte-stable");
    }
}

}  // namespace

int main() {
    const fs::path golden_dir{MULTITIME_GOLDEN_DIR};

    criterion(1, "block-commutator identity over 100 seeded partitions at dims {4, 8, 16}",
              block_commutator_identity);
    criterion(2, "Feshbach fixed point on pinned 2x2 families and 50 seeded dim-6 partitions",
              feshbach_fixed_point);
    criterion(3, "negative control: spec(H_AA) misses the coupled spectrum by > 1e-3",
              negative_control);
    criterion(4, "path-dependence scaling law (BCH) and commuting-path independence",
              path_dependence_scaling);
    criterion(5, "diagonal consistency: commuting gap <= 1e-9, sigma_x/sigma_z gap vs oracle",
              diagonal_consistency);
    criterion(6, "interaction obstruction: free factorization, first-order law, Bell entropy",
              interaction_obstruction);
    criterion(7, "non-Hermitian gate refusal, Gamow decay with override, Hermitian norm constancy",
              non_hermitian_gate);
    criterion(8, "numerics substrate: unitarity, midpoint convergence, semigroup property",
              numerics_substrate);
    criterion(9, "runner determinism: golden suite exit 0, byte-stable reports",
              [&golden_dir] { runner_determinism(golden_dir); });

    if (failures == 0) {
        std::printf("ACCEPTANCE: 9/9 criteria passed\n");
        return 0;
    }
    std::printf("ACCEPTANCE: %d/9 criteria FAILED\n", failures);
    return 1;
}
