#include <doctest.h>

#include <array>
#include <cmath>

#include "multitime/propagation.hpp"
#include "multitime/serialization.hpp"
#include "support/oracles.hpp"

using namespace multitime;

namespace {

HamiltonianFamily constant_family(const Operator& h1, const Operator& h2,
                                  bool hermitian_required = true) {
    return HamiltonianFamily({TimeDependentOperator::constant(2, h1),
                              TimeDependentOperator::constant(2, h2)},
                             hermitian_required);
}

StateVector basis_state(Index dim, Index k) {
    Vector v = Vector::Zero(dim);
    v(k) = 1.0;
    return StateVector(v);
}

// H(t) = sin(t) sigma_x + cos(t) sigma_z on a single time axis; strongly
// non-commuting across times, so the midpoint rule shows its true order.
HamiltonianFamily driven_single_axis() {
    const TimeDependentOperator field(1, 2,
                                      {{CoefficientFunction::sine(0, 1.0, 1.0), pauli_x()},
                                       {CoefficientFunction::cosine(0, 1.0, 1.0), pauli_z()}});
    return HamiltonianFamily({field});
}

}  // namespace

TEST_CASE("integrability residual") {
    SUBCASE("operators on disjoint tensor factors commute") {
        const HamiltonianFamily family = constant_family(
            tensor(pauli_x(), Operator::identity(2)), tensor(Operator::identity(2), pauli_z()));
        const std::array<double, 2> t{0.3, -1.0};
        CHECK(integrability_residual(family, t, 0, 1) == 0.0);
    }
    SUBCASE("sigma_x / sigma_z on the same space gives 2 sqrt 2") {
        const HamiltonianFamily family = constant_family(pauli_x(), pauli_z());
        const std::array<double, 2> t{0.0, 0.0};
        CHECK(integrability_residual(family, t, 0, 1) ==
              doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
        // symmetric under swapping the pair
        CHECK(integrability_residual(family, t, 1, 0) ==
              doctest::Approx(integrability_residual(family, t, 0, 1)).epsilon(1e-15));
    }
    SUBCASE("derivative terms cancel for H1 = t2 A, H2 = t1 A") {
        const Operator a = random_hermitian(3, 4);
        const HamiltonianFamily family(
            {TimeDependentOperator(2, 3, {{CoefficientFunction::monomial(1, 1.0, 1), a}}),
             TimeDependentOperator(2, 3, {{CoefficientFunction::monomial(0, 1.0, 1), a}})});
        const std::array<double, 2> t{0.7, 1.9};
        // the derivative terms cancel exactly; the [H1, H2] term leaves
        // rounding noise from the two scalar prefactors
        CHECK(integrability_residual(family, t, 0, 1) <= 1e-14);
    }
    SUBCASE("index errors") {
        const HamiltonianFamily family = constant_family(pauli_x(), pauli_z());
        const std::array<double, 2> t{0.0, 0.0};
        CHECK_THROWS_AS(integrability_residual(family, t, 0, 2), IndexOutOfRange);
        CHECK_THROWS_AS(integrability_residual(family, t, 1, 1), IndexOutOfRange);
    }
}

TEST_CASE("integrability report") {
    SUBCASE("commuting constant family reports zero everywhere") {
        const HamiltonianFamily family = constant_family(
            tensor(pauli_x(), Operator::identity(2)), tensor(Operator::identity(2), pauli_z()));
        const auto report = integrability_report(family, {{0.0, 0.0}, {1.0, 2.0}});
        CHECK(report.max_residual == 0.0);
        CHECK(report.argmax_j == 0);
        CHECK(report.argmax_k == 1);
    }
    SUBCASE("violating family reports 2 sqrt 2 at every sample") {
        const HamiltonianFamily family = constant_family(pauli_x(), pauli_z());
        const auto report = integrability_report(family, {{0.0, 0.0}, {0.5, 2.5}});
        CHECK(report.max_residual == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
    }
    SUBCASE("single time variable leaves nothing to check") {
        const HamiltonianFamily family({TimeDependentOperator::constant(1, pauli_x())});
        const auto report = integrability_report(family, {{0.0}});
        CHECK(report.max_residual == 0.0);
        CHECK(report.argmax_j == -1);
        CHECK(report.argmax_times.empty());
    }
    SUBCASE("empty sample list is refused") {
        const HamiltonianFamily family = constant_family(pauli_x(), pauli_z());
        CHECK_THROWS_AS(integrability_report(family, {}), Error);
    }
}

TEST_CASE("propagate") {
    SUBCASE("zero family leaves the state unchanged, times updated") {
        const HamiltonianFamily family(
            {TimeDependentOperator::zero(2, 2), TimeDependentOperator::zero(2, 2)});
        const MultiTimeState initial{basis_state(2, 0), {0.0, 0.0}};
        const TimePath path({0.0, 0.0}, {{0, 1.5, 3}, {1, -0.5, 2}});
        const MultiTimeState out = propagate(family, initial, path);
        CHECK((out.state - initial.state).norm() == 0.0);
        CHECK(out.times[0] == doctest::Approx(1.5));
        CHECK(out.times[1] == doctest::Approx(-0.5));
    }
    SUBCASE("constant H reproduces exp(-iHt) psi0") {
        oracles::GaussianSource gen(9);
        const Matrix h = gen.hermitian(4);
        const HamiltonianFamily family(
            {TimeDependentOperator::constant(1, Operator(h))});
        const Vector psi0 = gen.unit_vector(4);
        const TimePath path({0.0}, {{0, 0.8, 1}});
        const MultiTimeState out = propagate(family, {StateVector(psi0), {0.0}}, path);
        const Vector expected = oracles::series_evolve(h, psi0, 0.8);
        CHECK((out.state.amplitudes() - expected).norm() < 1e-12);
    }
    SUBCASE("commuting constant members make segment order irrelevant") {
        const HamiltonianFamily family = constant_family(
            tensor(pauli_x(), Operator::identity(2)), tensor(Operator::identity(2), pauli_z()));
        const MultiTimeState initial{basis_state(4, 0), {0.0, 0.0}};
        const TimePath order_a({0.0, 0.0}, {{0, 1.0, 1}, {1, 1.0, 1}});
        const TimePath order_b({0.0, 0.0}, {{1, 1.0, 1}, {0, 1.0, 1}});
        const MultiTimeState a = propagate(family, initial, order_a);
        const MultiTimeState b = propagate(family, initial, order_b);
        CHECK((a.state - b.state).norm() < 1e-12);
    }
    SUBCASE("precondition errors") {
        const HamiltonianFamily family = constant_family(pauli_x(), pauli_z());
        const MultiTimeState initial{basis_state(2, 0), {0.0, 0.0}};
        CHECK_THROWS_AS(propagate(family, initial, TimePath({0.5, 0.0}, {})), PathStartMismatch);
        const MultiTimeState wrong_dim{basis_state(3, 0), {0.0, 0.0}};
        CHECK_THROWS_AS(propagate(family, wrong_dim, TimePath({0.0, 0.0}, {})), DimensionMismatch);
    }
}

TEST_CASE("path dependence residual") {
    const HamiltonianFamily commuting = constant_family(
        tensor(pauli_x(), Operator::identity(2)), tensor(Operator::identity(2), pauli_z()));
    const HamiltonianFamily violating = constant_family(pauli_x(), pauli_z());

    SUBCASE("commuting family is path independent") {
        const MultiTimeState initial{basis_state(4, 0), {0.0, 0.0}};
        const TimePath a({0.0, 0.0}, {{0, 0.7, 2}, {1, 1.3, 2}});
        const TimePath b({0.0, 0.0}, {{1, 1.3, 2}, {0, 0.7, 2}});
        CHECK(path_dependence_residual(commuting, initial, a, b) <= 1e-10);
    }
    SUBCASE("BCH scaling at t = 1e-3: residual = 2e-6 within 5%") {
        const double t = 1e-3;
        const MultiTimeState initial{basis_state(2, 0), {0.0, 0.0}};
        const TimePath a({0.0, 0.0}, {{0, t, 1}, {1, t, 1}});
        const TimePath b({0.0, 0.0}, {{1, t, 1}, {0, t, 1}});
        const double residual = path_dependence_residual(violating, initial, a, b);
        CHECK(residual == doctest::Approx(2e-6).epsilon(0.05));
    }
    SUBCASE("identical paths give exactly zero") {
        const MultiTimeState initial{basis_state(2, 0), {0.0, 0.0}};
        const TimePath a({0.0, 0.0}, {{0, 0.4, 2}, {1, 0.6, 3}});
        CHECK(path_dependence_residual(violating, initial, a, a) == 0.0);
    }
    SUBCASE("endpoint mismatch is refused") {
        const MultiTimeState initial{basis_state(2, 0), {0.0, 0.0}};
        const TimePath a({0.0, 0.0}, {{0, 0.4, 1}});
        const TimePath b({0.0, 0.0}, {{0, 0.5, 1}});
        CHECK_THROWS_AS(path_dependence_residual(violating, initial, a, b), EndpointMismatch);
    }
}

TEST_CASE("diagonal consistency gap") {
    SUBCASE("zero time gives zero gap") {
        const HamiltonianFamily family = constant_family(pauli_x(), pauli_z());
        CHECK(diagonal_consistency_gap(family, basis_state(2, 0), 0.0, 4) == 0.0);
    }
    SUBCASE("commuting constant family stays consistent at t = 1") {
        const HamiltonianFamily family = constant_family(
            tensor(pauli_x(), Operator::identity(2)), tensor(Operator::identity(2), pauli_z()));
        CHECK(diagonal_consistency_gap(family, basis_state(4, 0), 1.0, 1) <= 1e-9);
    }
    SUBCASE("sigma_x / sigma_z gap matches the brute-force oracle at t = 1") {
        const HamiltonianFamily family = constant_family(pauli_x(), pauli_z());
        const double gap = diagonal_consistency_gap(family, basis_state(2, 0), 1.0, 1);

        const Vector psi0 = basis_state(2, 0).amplitudes();
        const Vector full = oracles::series_evolve(pauli_x().matrix() + pauli_z().matrix(), psi0, 1.0);
        const Vector stair = oracles::series_evolve(
            pauli_z().matrix(), oracles::series_evolve(pauli_x().matrix(), psi0, 1.0), 1.0);
        const double expected = (full - stair).norm();

        CHECK(gap == doctest::Approx(expected).epsilon(1e-12));
        CHECK(gap > 0.1);
        CHECK(gap == doctest::Approx(0.7992141739660588).epsilon(1e-12));
    }
}

TEST_CASE("norm preservation for Hermitian families") {
    oracles::GaussianSource gen(777);
    const HamiltonianFamily family = constant_family(Operator(gen.hermitian(4)),
                                                     Operator(gen.hermitian(4)));
    const StateVector psi0{gen.unit_vector(4)};
    const TimePath path({0.0, 0.0}, {{0, 2.0, 5}, {1, -1.0, 4}, {0, 0.5, 2}});
    const MultiTimeState out = propagate(family, {psi0, {0.0, 0.0}}, path);
    CHECK(std::abs(out.state.norm() - 1.0) <= 1e-9 * path.total_length());
}

TEST_CASE("midpoint substep convergence is second order") {
    const HamiltonianFamily family = driven_single_axis();
    const StateVector psi0 = basis_state(2, 0);
    const auto evolve = [&](int steps) {
        const TimePath path({0.0}, {{0, 1.0, steps}});
        return propagate(family, {psi0, {0.0}}, path).state.amplitudes();
    };
    const Vector reference = evolve(400);  // 10x finer than the finest run below
    const double coarse = (evolve(20) - reference).norm();
    const double fine = (evolve(40) - reference).norm();
    CHECK(coarse / fine >= 3.0);  // ideal second-order ratio is 4
}

TEST_CASE("vanishing residual at all samples implies path independence") {
    // any pair of commuting constant operators (shared eigenbasis)
    oracles::GaussianSource gen(31);
    const Matrix basis = oracles::series_exp(Complex(0, 1) * gen.hermitian(4));  // unitary
    Matrix d1 = Matrix::Zero(4, 4), d2 = Matrix::Zero(4, 4);
    d1.diagonal() << 0.3, -1.0, 2.0, 0.7;
    d2.diagonal() << 1.1, 0.2, -0.4, 1.9;
    const Operator h1{(basis * d1 * basis.adjoint()).eval()};
    const Operator h2{(basis * d2 * basis.adjoint()).eval()};
    const HamiltonianFamily family = constant_family(h1, h2);

    const auto report = integrability_report(family, {{0.0, 0.0}, {0.4, 0.9}});
    REQUIRE(report.max_residual <= 1e-12);

    const MultiTimeState initial{StateVector(gen.unit_vector(4)), {0.0, 0.0}};
    const TimePath a({0.0, 0.0}, {{0, 0.6, 2}, {1, 0.9, 2}});
    const TimePath b({0.0, 0.0}, {{1, 0.9, 2}, {0, 0.6, 2}});
    CHECK(path_dependence_residual(family, initial, a, b) <= 1e-9);
}

TEST_CASE("path JSON round trip") {
    const TimePath path({0.0, 1.0}, {{0, 0.5, 2}, {1, -0.25, 1}});
    const TimePath back = path_from_json(to_json(path));
    CHECK(back.start() == path.start());
    REQUIRE(back.segments().size() == 2);
    CHECK(back.segments()[1].delta == doctest::Approx(-0.25));
    CHECK(back.endpoint()[0] == doctest::Approx(0.5));
}
