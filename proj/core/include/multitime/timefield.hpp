// timefield.hpp — Time-dependent partial Hamiltonians H_j(t_1,...,t_n) as
// finite sums of closed-form scalar coefficients times constant operators.
// The coefficient family {constant, monomial, sine, cosine, exponential} is
// closed under partial differentiation, so derivatives are exact.

#pragma once

#include <span>
#include <vector>

#include "multitime/opalg.hpp"

namespace multitime {

enum class CoeffKind { Constant, Monomial, Sine, Cosine, Exponential };

// Scalar coefficient depending on at most one time variable:
//   constant     a
//   monomial     a * t_v^k
//   sine         a * sin(w t_v)
//   cosine       a * cos(w t_v)
//   exponential  a * exp(r t_v)
class CoefficientFunction {
public:
    static CoefficientFunction constant(double amplitude);
    static CoefficientFunction monomial(int var, double amplitude, int degree);
    static CoefficientFunction sine(int var, double amplitude, double omega);
    static CoefficientFunction cosine(int var, double amplitude, double omega);
    static CoefficientFunction exponential(int var, double amplitude, double rate);

    CoeffKind kind() const { return kind_; }
    int variable() const { return var_; }
    double amplitude() const { return amplitude_; }
    // degree for monomials, omega for sine/cosine, rate for exponentials
    double parameter() const { return param_; }

    double operator()(std::span<const double> times) const;

    // Exact d/dt_j; stays within the family.
    CoefficientFunction derivative(int j) const;

    bool is_zero() const { return amplitude_ == 0.0; }

private:
    CoefficientFunction(CoeffKind kind, int var, double amplitude, double param)
        : kind_(kind), var_(var), amplitude_(amplitude), param_(param) {}

    CoeffKind kind_;
    int var_;
    double amplitude_;
    double param_;
};

struct FieldTerm {
    CoefficientFunction coeff;
    Operator op;
};

// Finite sum of coefficient * constant-operator terms over n time variables.
class TimeDependentOperator {
public:
    TimeDependentOperator(int n_times, Index dim, std::vector<FieldTerm> terms);

    static TimeDependentOperator constant(int n_times, const Operator& h);
    static TimeDependentOperator zero(int n_times, Index dim);

    int n_times() const { return n_times_; }
    Index dim() const { return dim_; }
    const std::vector<FieldTerm>& terms() const { return terms_; }

    // Sum of coeff(times) * op. Throws ArityMismatch on wrong tuple length.
    Operator evaluate(std::span<const double> times) const;

    // Term-wise analytic d/dt_j; zero terms are dropped.
    TimeDependentOperator partial_derivative(int j) const;

    // True when every term operator is Hermitian; with real coefficients this
    // makes every evaluation Hermitian.
    bool all_terms_hermitian() const;

private:
    int n_times_;
    Index dim_;
    std::vector<FieldTerm> terms_;
};

TimeDependentOperator operator+(const TimeDependentOperator& a, const TimeDependentOperator& b);

// The indexed family {H_j}, one member per time variable.
class HamiltonianFamily {
public:
    HamiltonianFamily(std::vector<TimeDependentOperator> members, bool hermitian_required = true);

    int n_times() const { return static_cast<int>(members_.size()); }
    Index dim() const { return members_.front().dim(); }
    bool hermitian_required() const { return hermitian_required_; }
    const TimeDependentOperator& member(int j) const;

private:
    std::vector<TimeDependentOperator> members_;
    bool hermitian_required_;
};

}  // namespace multitime
