// propagation.hpp — Multi-time evolution along staircase paths, the
// integrability-condition residual, path-dependence quantification, and the
// diagonal consistency check against full single-time evolution.

#pragma once

#include <vector>

#include "multitime/timefield.hpp"

namespace multitime {

struct MultiTimeState {
    StateVector state;
    std::vector<double> times;
};

struct PathSegment {
    int axis;      // which time coordinate moves
    double delta;  // signed duration
    int steps;     // midpoint substeps, >= 1
};

// Piecewise-axis-aligned path in the time hyperplane.
class TimePath {
public:
    TimePath(std::vector<double> start, std::vector<PathSegment> segments);

    const std::vector<double>& start() const { return start_; }
    const std::vector<PathSegment>& segments() const { return segments_; }
    std::vector<double> endpoint() const;
    double total_length() const;  // sum of |delta|

private:
    std::vector<double> start_;
    std::vector<PathSegment> segments_;
};

// ||dH_k/dt_j - dH_j/dt_k + i[H_j, H_k]||_F at the given times, with analytic
// derivatives. Symmetric under (j,k) swap. Throws IndexOutOfRange.
double integrability_residual(const HamiltonianFamily& family, std::span<const double> times,
                              int j, int k);

struct IntegrabilityReport {
    double max_residual = 0.0;
    int argmax_j = -1;  // -1 when there is no pair to check (n_times == 1)
    int argmax_k = -1;
    std::vector<double> argmax_times;
};

IntegrabilityReport integrability_report(const HamiltonianFamily& family,
                                         const std::vector<std::vector<double>>& sample_times);

// Solves i d/dt_j phi = H_j phi segment by segment with midpoint-rule
// exponential substeps (exact for H_j constant along the segment).
// Throws DimensionMismatch, PathStartMismatch.
MultiTimeState propagate(const HamiltonianFamily& family, const MultiTimeState& initial,
                         const TimePath& path);

// ||propagate(path_a).state - propagate(path_b).state||_2 for two paths with
// common start and endpoint. Throws EndpointMismatch.
double path_dependence_residual(const HamiltonianFamily& family, const MultiTimeState& initial,
                                const TimePath& path_a, const TimePath& path_b);

// Distance between full evolution under sum_j H_j(t,...,t) and the multi-time
// staircase evolute at (t,...,t), both from the same initial state at 0.
double diagonal_consistency_gap(const HamiltonianFamily& family, const StateVector& initial,
                                double t, int steps);

}  // namespace multitime
