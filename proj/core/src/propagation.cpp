#include "multitime/propagation.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace multitime {

namespace {

constexpr double kTupleTol = 1e-12;
const Complex kMinusI{0.0, -1.0};

bool tuples_close(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > kTupleTol) return false;
    }
    return true;
}

}  // namespace

// -------------------------------- TimePath ----------------------------------

TimePath::TimePath(std::vector<double> start, std::vector<PathSegment> segments)
    : start_(std::move(start)), segments_(std::move(segments)) {
    if (start_.empty()) throw Error("TimePath: empty start tuple");
    for (const auto& seg : segments_) {
        if (seg.axis < 0 || seg.axis >= static_cast<int>(start_.size())) {
            throw IndexOutOfRange("TimePath: segment axis " + std::to_string(seg.axis) +
                                  " out of range for " + std::to_string(start_.size()) + " times");
        }
        if (seg.steps < 1) throw Error("TimePath: segment steps must be >= 1");
    }
}

std::vector<double> TimePath::endpoint() const {
    std::vector<double> t = start_;
    for (const auto& seg : segments_) t[static_cast<std::size_t>(seg.axis)] += seg.delta;
    return t;
}

double TimePath::total_length() const {
    double len = 0.0;
    for (const auto& seg : segments_) len += std::abs(seg.delta);
    return len;
}

// ---------------------------- Integrability ---------------------------------

double integrability_residual(const HamiltonianFamily& family, std::span<const double> times,
                              int j, int k) {
    const int n = family.n_times();
    if (j < 0 || j >= n || k < 0 || k >= n) {
        throw IndexOutOfRange("integrability_residual: pair (" + std::to_string(j) + "," +
                              std::to_string(k) + ") out of range");
    }
    if (j == k) throw IndexOutOfRange("integrability_residual: indices must differ");
    const Operator hj = family.member(j).evaluate(times);
    const Operator hk = family.member(k).evaluate(times);
    const Operator dk_dj = family.member(k).partial_derivative(j).evaluate(times);
    const Operator dj_dk = family.member(j).partial_derivative(k).evaluate(times);
    return (dk_dj - dj_dk + Complex(0.0, 1.0) * commutator(hj, hk)).frobenius_norm();
}

IntegrabilityReport integrability_report(const HamiltonianFamily& family,
                                         const std::vector<std::vector<double>>& sample_times) {
    if (sample_times.empty()) throw Error("integrability_report: empty sample list");
    IntegrabilityReport report;
    bool first = true;
    for (const auto& times : sample_times) {
        for (int j = 0; j < family.n_times(); ++j) {
            for (int k = j + 1; k < family.n_times(); ++k) {
                const double r = integrability_residual(family, times, j, k);
                if (first || r > report.max_residual) {
                    report.max_residual = r;
                    report.argmax_j = j;
                    report.argmax_k = k;
                    report.argmax_times = times;
                    first = false;
                }
            }
        }
    }
    return report;
}

// ----------------------------- Propagation ----------------------------------

MultiTimeState propagate(const HamiltonianFamily& family, const MultiTimeState& initial,
                         const TimePath& path) {
    if (family.dim() != initial.state.dim()) {
        throw DimensionMismatch("propagate: family dim " + std::to_string(family.dim()) +
                                " != state dim " + std::to_string(initial.state.dim()));
    }
    if (static_cast<int>(initial.times.size()) != family.n_times()) {
        throw ArityMismatch("propagate: state carries " + std::to_string(initial.times.size()) +
                            " times, family has " + std::to_string(family.n_times()));
    }
    if (!tuples_close(path.start(), initial.times)) {
        throw PathStartMismatch("propagate: path start differs from the state's time tuple");
    }

    Vector psi = initial.state.amplitudes();
    std::vector<double> times = initial.times;
    for (const auto& seg : path.segments()) {
        const auto axis = static_cast<std::size_t>(seg.axis);
        const double t0 = times[axis];
        const double h = seg.delta / seg.steps;
        for (int step = 0; step < seg.steps; ++step) {
            times[axis] = t0 + h * (step + 0.5);  // midpoint rule
            const Operator hmid = family.member(seg.axis).evaluate(times);
            psi = matrix_exponential(hmid, kMinusI * h).matrix() * psi;
        }
        times[axis] = t0 + seg.delta;
    }
    return {StateVector(std::move(psi)), std::move(times)};
}

double path_dependence_residual(const HamiltonianFamily& family, const MultiTimeState& initial,
                                const TimePath& path_a, const TimePath& path_b) {
    if (!tuples_close(path_a.endpoint(), path_b.endpoint())) {
        throw EndpointMismatch("path_dependence_residual: paths end at different time tuples");
    }
    const MultiTimeState a = propagate(family, initial, path_a);
    const MultiTimeState b = propagate(family, initial, path_b);
    return (a.state - b.state).norm();
}

double diagonal_consistency_gap(const HamiltonianFamily& family, const StateVector& initial,
                                double t, int steps) {
    if (!std::isfinite(t)) throw Error("diagonal_consistency_gap: t must be finite");
    if (steps < 1) throw Error("diagonal_consistency_gap: steps must be >= 1");
    const int n = family.n_times();

    // Full evolution under the summed Hamiltonian on the diagonal.
    Vector psi_full = initial.amplitudes();
    const double h = t / steps;
    for (int step = 0; step < steps; ++step) {
        const std::vector<double> diag(static_cast<std::size_t>(n), h * (step + 0.5));
        Matrix hsum = Matrix::Zero(family.dim(), family.dim());
        for (int j = 0; j < n; ++j) hsum += family.member(j).evaluate(diag).matrix();
        psi_full = matrix_exponential(Operator(std::move(hsum)), kMinusI * h).matrix() * psi_full;
    }

    // Multi-time staircase to (t,...,t), axes in increasing order.
    std::vector<PathSegment> segments;
    segments.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) segments.push_back({j, t, steps});
    const TimePath staircase(std::vector<double>(static_cast<std::size_t>(n), 0.0),
                             std::move(segments));
    const MultiTimeState phi = propagate(
        family, {initial, std::vector<double>(static_cast<std::size_t>(n), 0.0)}, staircase);

    return (Vector(psi_full) - phi.state.amplitudes()).norm();
}

}  // namespace multitime
