// serialization.hpp — Text interchange for the shared file formats.
// Matrices: {"dim": d, "entries": [[[re,im], ...], ...]} row-major.
// Complex scalars are [re, im] pairs everywhere.

#pragma once

#include <string>

#include "multitime/opalg.hpp"
#include "multitime/propagation.hpp"
#include "multitime/timefield.hpp"

namespace multitime {

std::string to_json(const Operator& op);
std::string to_json(const StateVector& psi);
std::string to_json(const TimeDependentOperator& field);
std::string to_json(const HamiltonianFamily& family);
std::string to_json(const TimePath& path);

// Throw ParseError on malformed JSON text and SchemaError (naming the
// offending field) on structural problems.
Operator operator_from_json(const std::string& text);
StateVector state_from_json(const std::string& text);
TimeDependentOperator field_from_json(const std::string& text);
HamiltonianFamily family_from_json(const std::string& text);
TimePath path_from_json(const std::string& text);

}  // namespace multitime
