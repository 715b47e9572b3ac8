#include "multitime/serialization.hpp"

#include <utility>

#include "json_io.hpp"

namespace multitime {

namespace jio = jsonio;
using jio::json;

// ------------------------- schema/plumbing helpers --------------------------

namespace jsonio {

const json& member(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where + ": expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw SchemaError(where + ": missing field '" + key + "'");
    return *it;
}

const json* member_opt(const json& j, const char* key) {
    if (!j.is_object()) return nullptr;
    const auto it = j.find(key);
    return (it == j.end() || it->is_null()) ? nullptr : &*it;
}

double as_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw SchemaError(where + ": expected a number");
    return j.get<double>();
}

Index as_index(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer");
    const auto v = j.get<long long>();
    if (v < 0) throw SchemaError(where + ": expected a non-negative integer");
    return static_cast<Index>(v);
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) throw SchemaError(where + ": expected a [re, im] pair");
    return {as_number(j[0], where + "[0]"), as_number(j[1], where + "[1]")};
}

json matrix_to_json(const Operator& op) {
    json entries = json::array();
    for (Index i = 0; i < op.dim(); ++i) {
        json row = json::array();
        for (Index k = 0; k < op.dim(); ++k) row.push_back(complex_to_json(op.matrix()(i, k)));
        entries.push_back(std::move(row));
    }
    return json{{"dim", op.dim()}, {"entries", std::move(entries)}};
}

Operator matrix_from(const json& j, const std::string& where) {
    const Index dim = as_index(member(j, "dim", where), where + ".dim");
    if (dim < 1) throw SchemaError(where + ".dim: must be >= 1");
    if (dim > max_dimension()) {
        throw SchemaError(where + ".dim: exceeds max dimension " + std::to_string(max_dimension()));
    }
    const json& entries = member(j, "entries", where);
    if (!entries.is_array() || static_cast<Index>(entries.size()) != dim) {
        throw SchemaError(where + ".entries: expected " + std::to_string(dim) + " rows");
    }
    Matrix m(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        const json& row = entries[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != dim) {
            throw SchemaError(where + ".entries[" + std::to_string(i) + "]: expected " +
                              std::to_string(dim) + " columns");
        }
        for (Index k = 0; k < dim; ++k) {
            m(i, k) = complex_from(row[static_cast<std::size_t>(k)],
                                   where + ".entries[" + std::to_string(i) + "][" +
                                       std::to_string(k) + "]");
        }
    }
    return Operator(std::move(m));
}

json state_to_json(const StateVector& psi) {
    json amps = json::array();
    for (Index i = 0; i < psi.dim(); ++i) amps.push_back(complex_to_json(psi.amplitudes()(i)));
    return amps;
}

StateVector state_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw SchemaError(where + ": expected a non-empty array");
    Vector amps(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        amps(static_cast<Index>(i)) = complex_from(j[i], where + "[" + std::to_string(i) + "]");
    }
    return StateVector(std::move(amps));
}

namespace {

const char* kind_name(CoeffKind k) {
    switch (k) {
        case CoeffKind::Constant: return "constant";
        case CoeffKind::Monomial: return "monomial";
        case CoeffKind::Sine: return "sine";
        case CoeffKind::Cosine: return "cosine";
        case CoeffKind::Exponential: return "exponential";
    }
    return "constant";
}

}  // namespace

json coeff_to_json(const CoefficientFunction& c) {
    json out{{"kind", kind_name(c.kind())}};
    if (c.kind() != CoeffKind::Constant) out["var"] = c.variable();
    if (c.kind() == CoeffKind::Constant) {
        out["params"] = json::array({c.amplitude()});
    } else {
        out["params"] = json::array({c.amplitude(), c.parameter()});
    }
    return out;
}

CoefficientFunction coeff_from(const json& j, const std::string& where) {
    const json& kind_j = member(j, "kind", where);
    if (!kind_j.is_string()) throw SchemaError(where + ".kind: expected a string");
    const std::string kind = kind_j.get<std::string>();
    const json& params = member(j, "params", where);
    if (!params.is_array()) throw SchemaError(where + ".params: expected an array");

    const auto param = [&](std::size_t i) {
        if (i >= params.size()) {
            throw SchemaError(where + ".params: kind '" + kind + "' needs " +
                              std::to_string(i + 1) + " parameters");
        }
        return as_number(params[i], where + ".params[" + std::to_string(i) + "]");
    };
    if (kind == "constant") return CoefficientFunction::constant(param(0));

    const json* var_j = member_opt(j, "var");
    if (var_j == nullptr) throw SchemaError(where + ": non-constant coefficient needs 'var'");
    const int var = static_cast<int>(as_index(*var_j, where + ".var"));
    if (kind == "monomial") return CoefficientFunction::monomial(var, param(0), static_cast<int>(param(1)));
    if (kind == "sine") return CoefficientFunction::sine(var, param(0), param(1));
    if (kind == "cosine") return CoefficientFunction::cosine(var, param(0), param(1));
    if (kind == "exponential") return CoefficientFunction::exponential(var, param(0), param(1));
    throw SchemaError(where + ".kind: unknown coefficient kind '" + kind + "'");
}

json field_to_json(const TimeDependentOperator& f) {
    json terms = json::array();
    for (const auto& term : f.terms()) {
        terms.push_back(json{{"coeff", coeff_to_json(term.coeff)}, {"op", matrix_to_json(term.op)}});
    }
    return json{{"n_times", f.n_times()}, {"dim", f.dim()}, {"terms", std::move(terms)}};
}

TimeDependentOperator field_from(const json& j, const std::string& where,
                                 const MatrixParser& parse_matrix) {
    const int n_times = static_cast<int>(as_index(member(j, "n_times", where), where + ".n_times"));
    const Index dim = as_index(member(j, "dim", where), where + ".dim");
    const json& terms_j = member(j, "terms", where);
    if (!terms_j.is_array()) throw SchemaError(where + ".terms: expected an array");
    std::vector<FieldTerm> terms;
    terms.reserve(terms_j.size());
    for (std::size_t i = 0; i < terms_j.size(); ++i) {
        const std::string term_where = where + ".terms[" + std::to_string(i) + "]";
        const json& term = terms_j[i];
        terms.push_back({coeff_from(member(term, "coeff", term_where), term_where + ".coeff"),
                         parse_matrix(member(term, "op", term_where), term_where + ".op")});
    }
    return {n_times, dim, std::move(terms)};
}

json family_to_json(const HamiltonianFamily& fam) {
    json members = json::array();
    for (int jdx = 0; jdx < fam.n_times(); ++jdx) members.push_back(field_to_json(fam.member(jdx)));
    return json{{"hermitian_required", fam.hermitian_required()}, {"members", std::move(members)}};
}

HamiltonianFamily family_from(const json& j, const std::string& where,
                              const MatrixParser& parse_matrix) {
    const json& members_j = member(j, "members", where);
    if (!members_j.is_array() || members_j.empty()) {
        throw SchemaError(where + ".members: expected a non-empty array");
    }
    bool hermitian_required = true;
    if (const json* h = member_opt(j, "hermitian_required")) {
        if (!h->is_boolean()) throw SchemaError(where + ".hermitian_required: expected a boolean");
        hermitian_required = h->get<bool>();
    }
    std::vector<TimeDependentOperator> members;
    members.reserve(members_j.size());
    for (std::size_t i = 0; i < members_j.size(); ++i) {
        members.push_back(field_from(members_j[i], where + ".members[" + std::to_string(i) + "]",
                                     parse_matrix));
    }
    return {std::move(members), hermitian_required};
}

json path_to_json(const TimePath& p) {
    json segments = json::array();
    for (const auto& seg : p.segments()) {
        segments.push_back(json{{"axis", seg.axis}, {"delta", seg.delta}, {"steps", seg.steps}});
    }
    return json{{"start", p.start()}, {"segments", std::move(segments)}};
}

TimePath path_from(const json& j, const std::string& where) {
    const std::vector<double> start = real_vector_from(member(j, "start", where), where + ".start");
    const json& segs_j = member(j, "segments", where);
    if (!segs_j.is_array()) throw SchemaError(where + ".segments: expected an array");
    std::vector<PathSegment> segments;
    segments.reserve(segs_j.size());
    for (std::size_t i = 0; i < segs_j.size(); ++i) {
        const std::string seg_where = where + ".segments[" + std::to_string(i) + "]";
        const json& seg = segs_j[i];
        segments.push_back(
            {static_cast<int>(as_index(member(seg, "axis", seg_where), seg_where + ".axis")),
             as_number(member(seg, "delta", seg_where), seg_where + ".delta"),
             static_cast<int>(as_index(member(seg, "steps", seg_where), seg_where + ".steps"))});
    }
    return {start, std::move(segments)};
}

std::vector<double> real_vector_from(const json& j, const std::string& where) {
    if (!j.is_array()) throw SchemaError(where + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_number(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

}  // namespace jsonio

// ----------------------------- public surface -------------------------------

namespace {

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace

std::string to_json(const Operator& op) { return jio::matrix_to_json(op).dump(); }
std::string to_json(const StateVector& psi) { return jio::state_to_json(psi).dump(); }
std::string to_json(const TimeDependentOperator& field) { return jio::field_to_json(field).dump(); }
std::string to_json(const HamiltonianFamily& family) { return jio::family_to_json(family).dump(); }
std::string to_json(const TimePath& path) { return jio::path_to_json(path).dump(); }

Operator operator_from_json(const std::string& text) {
    return jio::matrix_from(parse_text(text), "matrix");
}

StateVector state_from_json(const std::string& text) {
    return jio::state_from(parse_text(text), "state");
}

TimeDependentOperator field_from_json(const std::string& text) {
    return jio::field_from(parse_text(text), "field");
}

HamiltonianFamily family_from_json(const std::string& text) {
    return jio::family_from(parse_text(text), "family");
}

TimePath path_from_json(const std::string& text) {
    return jio::path_from(parse_text(text), "path");
}

}  // namespace multitime
