#include "multitime/timefield.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace multitime {

// --------------------------- CoefficientFunction ----------------------------

CoefficientFunction CoefficientFunction::constant(double amplitude) {
    return {CoeffKind::Constant, 0, amplitude, 0.0};
}

CoefficientFunction CoefficientFunction::monomial(int var, double amplitude, int degree) {
    if (var < 0) throw IndexOutOfRange("monomial: negative variable index");
    if (degree < 0) throw Error("monomial: degree must be >= 0");
    return {CoeffKind::Monomial, var, amplitude, static_cast<double>(degree)};
}

CoefficientFunction CoefficientFunction::sine(int var, double amplitude, double omega) {
    if (var < 0) throw IndexOutOfRange("sine: negative variable index");
    return {CoeffKind::Sine, var, amplitude, omega};
}

CoefficientFunction CoefficientFunction::cosine(int var, double amplitude, double omega) {
    if (var < 0) throw IndexOutOfRange("cosine: negative variable index");
    return {CoeffKind::Cosine, var, amplitude, omega};
}

CoefficientFunction CoefficientFunction::exponential(int var, double amplitude, double rate) {
    if (var < 0) throw IndexOutOfRange("exponential: negative variable index");
    return {CoeffKind::Exponential, var, amplitude, rate};
}

double CoefficientFunction::operator()(std::span<const double> times) const {
    if (kind_ == CoeffKind::Constant) return amplitude_;
    if (var_ >= static_cast<int>(times.size())) {
        throw ArityMismatch("coefficient depends on t_" + std::to_string(var_) +
                            " but only " + std::to_string(times.size()) + " times given");
    }
    const double t = times[static_cast<std::size_t>(var_)];
    switch (kind_) {
        case CoeffKind::Monomial:
            return amplitude_ * std::pow(t, param_);
        case CoeffKind::Sine:
            return amplitude_ * std::sin(param_ * t);
        case CoeffKind::Cosine:
            return amplitude_ * std::cos(param_ * t);
        case CoeffKind::Exponential:
            return amplitude_ * std::exp(param_ * t);
        case CoeffKind::Constant:
            break;
    }
    return amplitude_;
}

CoefficientFunction CoefficientFunction::derivative(int j) const {
    if (kind_ == CoeffKind::Constant || var_ != j) return constant(0.0);
    switch (kind_) {
        case CoeffKind::Monomial: {
            const int k = static_cast<int>(param_);
            if (k == 0) return constant(0.0);
            return monomial(var_, amplitude_ * k, k - 1);
        }
        case CoeffKind::Sine:
            return cosine(var_, amplitude_ * param_, param_);
        case CoeffKind::Cosine:
            return sine(var_, -amplitude_ * param_, param_);
        case CoeffKind::Exponential:
            return exponential(var_, amplitude_ * param_, param_);
        case CoeffKind::Constant:
            break;
    }
    return constant(0.0);
}

// -------------------------- TimeDependentOperator ---------------------------

TimeDependentOperator::TimeDependentOperator(int n_times, Index dim, std::vector<FieldTerm> terms)
    : n_times_(n_times), dim_(dim), terms_(std::move(terms)) {
    if (n_times_ < 1) throw Error("TimeDependentOperator: n_times must be >= 1");
    if (dim_ < 1) throw Error("TimeDependentOperator: dim must be >= 1");
    for (const auto& term : terms_) {
        if (term.op.dim() != dim_) {
            throw DimensionMismatch("TimeDependentOperator: term operator dim " +
                                    std::to_string(term.op.dim()) + " != " + std::to_string(dim_));
        }
        if (term.coeff.kind() != CoeffKind::Constant && term.coeff.variable() >= n_times_) {
            throw IndexOutOfRange("TimeDependentOperator: coefficient variable t_" +
                                  std::to_string(term.coeff.variable()) + " out of range");
        }
    }
}

TimeDependentOperator TimeDependentOperator::constant(int n_times, const Operator& h) {
    return {n_times, h.dim(), {{CoefficientFunction::constant(1.0), h}}};
}

TimeDependentOperator TimeDependentOperator::zero(int n_times, Index dim) {
    return {n_times, dim, {}};
}

Operator TimeDependentOperator::evaluate(std::span<const double> times) const {
    if (static_cast<int>(times.size()) != n_times_) {
        throw ArityMismatch("evaluate: expected " + std::to_string(n_times_) + " times, got " +
                            std::to_string(times.size()));
    }
    Matrix sum = Matrix::Zero(dim_, dim_);
    for (const auto& term : terms_) sum += term.coeff(times) * term.op.matrix();
    return Operator(std::move(sum));
}

TimeDependentOperator TimeDependentOperator::partial_derivative(int j) const {
    if (j < 0 || j >= n_times_) {
        throw IndexOutOfRange("partial_derivative: index " + std::to_string(j) + " out of range");
    }
    std::vector<FieldTerm> result;
    for (const auto& term : terms_) {
        CoefficientFunction d = term.coeff.derivative(j);
        if (!d.is_zero()) result.push_back({d, term.op});
    }
    return {n_times_, dim_, std::move(result)};
}

bool TimeDependentOperator::all_terms_hermitian() const {
    for (const auto& term : terms_) {
        if (!term.op.is_hermitian()) return false;
    }
    return true;
}

TimeDependentOperator operator+(const TimeDependentOperator& a, const TimeDependentOperator& b) {
    if (a.n_times() != b.n_times() || a.dim() != b.dim()) {
        throw DimensionMismatch("field+field: shapes differ");
    }
    std::vector<FieldTerm> terms = a.terms();
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    return {a.n_times(), a.dim(), std::move(terms)};
}

// ---------------------------- HamiltonianFamily -----------------------------

HamiltonianFamily::HamiltonianFamily(std::vector<TimeDependentOperator> members,
                                     bool hermitian_required)
    : members_(std::move(members)), hermitian_required_(hermitian_required) {
    if (members_.empty()) throw Error("HamiltonianFamily: needs at least one member");
    const int n = static_cast<int>(members_.size());
    const Index d = members_.front().dim();
    for (const auto& m : members_) {
        if (m.n_times() != n) {
            throw ArityMismatch("HamiltonianFamily: member n_times " + std::to_string(m.n_times()) +
                                " != family size " + std::to_string(n));
        }
        if (m.dim() != d) throw DimensionMismatch("HamiltonianFamily: members have mixed dims");
        if (hermitian_required_ && !m.all_terms_hermitian()) {
            throw NotHermitian("HamiltonianFamily: hermitian_required but a member has a "
                               "non-Hermitian term operator");
        }
    }
}

const TimeDependentOperator& HamiltonianFamily::member(int j) const {
    if (j < 0 || j >= n_times()) {
        throw IndexOutOfRange("HamiltonianFamily::member: index " + std::to_string(j));
    }
    return members_[static_cast<std::size_t>(j)];
}

}  // namespace multitime
