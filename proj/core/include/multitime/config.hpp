// config.hpp — Process-wide numeric policy: dimension cap and shared tolerances.

#pragma once

#include <Eigen/Core>

namespace multitime {

// Dense-dimension cap for tensor products and eigensolves.
// Defaults to 4096; the MULTITIME_MAX_DIM environment variable overrides it
// (read once, on first use).
Eigen::Index max_dimension();

// Relative Frobenius defect below which an operator counts as Hermitian.
inline constexpr double kHermitianDefectTol = 1e-12;

// Relative singular-value cutoff for rank decisions (projector bases,
// resolvent invertibility).
inline constexpr double kRankTol = 1e-10;

inline constexpr const char* kToolVersion = "multitime 1.0.0";

}  // namespace multitime
