// opalg.hpp — Dense complex operator algebra: operators, states, projectors,
// commutators, Kronecker products, matrix exponentials, eigensolves, and the
// seeded Hermitian ensemble. Everything else in the library builds on this.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "multitime/config.hpp"
#include "multitime/errors.hpp"

namespace multitime {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// ------------------------------- Operator -----------------------------------

// Immutable square complex matrix with its Frobenius norm and Hermiticity
// defect computed on construction. Values are freely shareable across threads.
class Operator {
public:
    Operator() = default;  // empty (dim 0); only valid as a placeholder
    explicit Operator(Matrix m);

    static Operator zero(Index dim);
    static Operator identity(Index dim);

    Index dim() const { return mat_.rows(); }
    const Matrix& matrix() const { return mat_; }

    double frobenius_norm() const { return fnorm_; }

    // ||H - H^dag||_F / (1 + ||H||_F)
    double hermiticity_defect() const { return defect_; }
    bool is_hermitian() const { return defect_ <= kHermitianDefectTol; }

    Operator adjoint() const { return Operator(mat_.adjoint()); }

private:
    Matrix mat_;
    double fnorm_ = 0.0;
    double defect_ = 0.0;
};

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator-(const Operator& a);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(Complex s, const Operator& a);
Operator operator*(const Operator& a, Complex s);

// ------------------------------ StateVector ---------------------------------

class StateVector {
public:
    StateVector() = default;
    explicit StateVector(Vector amplitudes);

    Index dim() const { return amps_.size(); }
    const Vector& amplitudes() const { return amps_; }
    double norm() const { return amps_.norm(); }
    bool is_normalized(double tol = 1e-12) const;
    StateVector normalized() const;

private:
    Vector amps_;
};

StateVector operator*(const Operator& a, const StateVector& v);
StateVector operator+(const StateVector& a, const StateVector& b);
StateVector operator-(const StateVector& a, const StateVector& b);
StateVector operator*(Complex s, const StateVector& v);
Complex inner_product(const StateVector& a, const StateVector& b);

// ------------------------------- Projector ----------------------------------

// Hermitian idempotent operator with integer rank = trace.
class Projector {
public:
    Projector() = default;

    // Validates Hermiticity, idempotency and integer trace; throws Error.
    static Projector from_operator(const Operator& p);
    static Projector identity(Index dim);

    const Operator& op() const { return op_; }
    Index dim() const { return op_.dim(); }
    Index rank() const { return rank_; }

    // I - P
    Projector complement() const;

private:
    Projector(Operator op, Index rank) : op_(std::move(op)), rank_(rank) {}
    Operator op_;
    Index rank_ = 0;
    friend Projector projector_from_basis(const std::vector<StateVector>&);
};

// P = V (V^dag V)^-1 V^dag for linearly independent columns.
// Throws RankDeficient when the smallest singular value of the column matrix
// falls below kRankTol times the largest.
Projector projector_from_basis(const std::vector<StateVector>& columns);

// ------------------------------ Operations ----------------------------------

// ab - ba. Throws DimensionMismatch.
Operator commutator(const Operator& a, const Operator& b);

// Kronecker product; throws Overflow past max_dimension().
Operator tensor(const Operator& a, const Operator& b);

// exp(scale*h). Eigendecomposition path for Hermitian h (unitary to machine
// precision for scale = -i*t), scaling-and-squaring Pade otherwise.
// Throws NumericalFailure if the result is not finite.
Operator matrix_exponential(const Operator& h, Complex scale);

struct Eigenpair {
    Complex value;
    StateVector vector;  // unit norm
};

// Eigenpairs sorted by (Re, Im). Hermitian inputs get real eigenvalues and an
// orthonormal eigenbasis. Residuals are verified; NumericalFailure is thrown
// rather than returning silently wrong pairs (possible for pathological
// non-normal matrices).
std::vector<Eigenpair> eigendecompose(const Operator& h);

// H = (M + M^dag)/2, M with independent standard complex Gaussian entries
// drawn from a fixed, platform-independent generator (mt19937_64 + Box-Muller).
// Exactly Hermitian by construction; deterministic in (dim, seed).
Operator random_hermitian(Index dim, std::uint64_t seed);

// --------------------------- Common constants -------------------------------

Operator pauli_x();
Operator pauli_y();
Operator pauli_z();

}  // namespace multitime
