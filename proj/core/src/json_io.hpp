// json_io.hpp — Internal nlohmann-level (de)serialization helpers shared by
// serialization.cpp and scenario.cpp. Not installed.

#pragma once

#include <functional>
#include <string>

#include <json.hpp>

#include "multitime/opalg.hpp"
#include "multitime/propagation.hpp"
#include "multitime/timefield.hpp"

namespace multitime::jsonio {

using nlohmann::json;

// Parses a matrix object; customizable so scenario files can extend the plain
// format with symbolic specs (pauli, kron, random_hermitian, ...).
using MatrixParser = std::function<Operator(const json&, const std::string& where)>;

// ---- schema helpers (throw SchemaError naming `where`) ----
const json& member(const json& j, const char* key, const std::string& where);
const json* member_opt(const json& j, const char* key);
double as_number(const json& j, const std::string& where);
Index as_index(const json& j, const std::string& where);

// ---- plain formats ----
json complex_to_json(Complex z);
Complex complex_from(const json& j, const std::string& where);

json matrix_to_json(const Operator& op);
Operator matrix_from(const json& j, const std::string& where);

json state_to_json(const StateVector& psi);
StateVector state_from(const json& j, const std::string& where);

json coeff_to_json(const CoefficientFunction& c);
CoefficientFunction coeff_from(const json& j, const std::string& where);

json field_to_json(const TimeDependentOperator& f);
TimeDependentOperator field_from(const json& j, const std::string& where,
                                 const MatrixParser& parse_matrix = matrix_from);

json family_to_json(const HamiltonianFamily& fam);
HamiltonianFamily family_from(const json& j, const std::string& where,
                              const MatrixParser& parse_matrix = matrix_from);

json path_to_json(const TimePath& p);
TimePath path_from(const json& j, const std::string& where);

std::vector<double> real_vector_from(const json& j, const std::string& where);

}  // namespace multitime::jsonio
