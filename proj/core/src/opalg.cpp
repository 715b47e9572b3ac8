#include "multitime/opalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace multitime {

Eigen::Index max_dimension() {
    static const Index cap = [] {
        if (const char* env = std::getenv("MULTITIME_MAX_DIM")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v >= 1) return static_cast<Index>(v);
        }
        return static_cast<Index>(4096);
    }();
    return cap;
}

// ------------------------------- Operator -----------------------------------

Operator::Operator(Matrix m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
        throw Error("Operator: entries must form a square matrix of side >= 1, got " +
                    std::to_string(mat_.rows()) + "x" + std::to_string(mat_.cols()));
    }
    fnorm_ = mat_.norm();
    defect_ = (mat_ - mat_.adjoint()).norm() / (1.0 + fnorm_);
}

Operator Operator::zero(Index dim) { return Operator(Matrix::Zero(dim, dim)); }
Operator Operator::identity(Index dim) { return Operator(Matrix::Identity(dim, dim)); }

namespace {

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch(std::string(what) + ": operator dims " +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
}

}  // namespace

Operator operator+(const Operator& a, const Operator& b) {
    require_same_dim(a, b, "operator+");
    return Operator(a.matrix() + b.matrix());
}

Operator operator-(const Operator& a, const Operator& b) {
    require_same_dim(a, b, "operator-");
    return Operator(a.matrix() - b.matrix());
}

Operator operator-(const Operator& a) { return Operator(-a.matrix()); }

Operator operator*(const Operator& a, const Operator& b) {
    require_same_dim(a, b, "operator*");
    return Operator(a.matrix() * b.matrix());
}

Operator operator*(Complex s, const Operator& a) { return Operator(s * a.matrix()); }
Operator operator*(const Operator& a, Complex s) { return s * a; }

// ------------------------------ StateVector ---------------------------------

StateVector::StateVector(Vector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() < 1) throw Error("StateVector: dim must be >= 1");
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n == 0.0) throw NotNormalized("StateVector::normalized: zero vector");
    return StateVector(amps_ / n);
}

StateVector operator*(const Operator& a, const StateVector& v) {
    if (a.dim() != v.dim()) {
        throw DimensionMismatch("operator*state: dims " + std::to_string(a.dim()) + " vs " +
                                std::to_string(v.dim()));
    }
    return StateVector(a.matrix() * v.amplitudes());
}

StateVector operator+(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("state+state: dims differ");
    return StateVector(a.amplitudes() + b.amplitudes());
}

StateVector operator-(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("state-state: dims differ");
    return StateVector(a.amplitudes() - b.amplitudes());
}

StateVector operator*(Complex s, const StateVector& v) { return StateVector(s * v.amplitudes()); }

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("inner_product: dims differ");
    return a.amplitudes().dot(b.amplitudes());
}

// ------------------------------- Projector ----------------------------------

Projector Projector::from_operator(const Operator& p) {
    if (!p.is_hermitian()) {
        throw Error("Projector: matrix is not Hermitian (defect " +
                    std::to_string(p.hermiticity_defect()) + ")");
    }
    const double idem = (p.matrix() * p.matrix() - p.matrix()).norm();
    if (idem > 1e-12 * (1.0 + p.frobenius_norm())) {
        throw Error("Projector: matrix is not idempotent (||P^2-P||_F = " + std::to_string(idem) + ")");
    }
    const double tr = p.matrix().trace().real();
    const auto rank = static_cast<Index>(std::llround(tr));
    if (std::abs(tr - static_cast<double>(rank)) > 1e-10 || rank < 0 || rank > p.dim()) {
        throw Error("Projector: trace " + std::to_string(tr) + " is not an admissible rank");
    }
    return Projector(p, rank);
}

Projector Projector::identity(Index dim) { return Projector(Operator::identity(dim), dim); }

Projector Projector::complement() const {
    return Projector(Operator::identity(dim()) - op_, dim() - rank_);
}

Projector projector_from_basis(const std::vector<StateVector>& columns) {
    if (columns.empty()) throw RankDeficient("projector_from_basis: no columns");
    const Index d = columns.front().dim();
    const auto k = static_cast<Index>(columns.size());
    Matrix v(d, k);
    for (Index j = 0; j < k; ++j) {
        if (columns[static_cast<std::size_t>(j)].dim() != d) {
            throw DimensionMismatch("projector_from_basis: columns have mixed dims");
        }
        v.col(j) = columns[static_cast<std::size_t>(j)].amplitudes();
    }
    if (k > d) throw RankDeficient("projector_from_basis: more columns than dimension");

    Eigen::JacobiSVD<Matrix> svd(v, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv(k - 1) < kRankTol * sv(0)) {
        throw RankDeficient("projector_from_basis: columns dependent (sigma_min/sigma_max = " +
                            std::to_string(sv(k - 1) / sv(0)) + ")");
    }
    const Matrix u = svd.matrixU();
    Matrix p = u * u.adjoint();
    p = 0.5 * (p + p.adjoint().eval());  // kill roundoff asymmetry
    return Projector(Operator(std::move(p)), k);
}

// ------------------------------ Operations ----------------------------------

Operator commutator(const Operator& a, const Operator& b) {
    require_same_dim(a, b, "commutator");
    return Operator(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

Operator tensor(const Operator& a, const Operator& b) {
    if (a.dim() * b.dim() > max_dimension()) {
        throw Overflow("tensor: result dim " + std::to_string(a.dim() * b.dim()) +
                       " exceeds max dimension " + std::to_string(max_dimension()));
    }
    return Operator(Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval());
}

Operator matrix_exponential(const Operator& h, Complex scale) {
    if (!std::isfinite(scale.real()) || !std::isfinite(scale.imag())) {
        throw Error("matrix_exponential: scale must be finite");
    }
    if (scale == Complex(0.0, 0.0)) return Operator::identity(h.dim());
    Matrix result;
    if (h.is_hermitian()) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
        if (es.info() != Eigen::Success) {
            throw NumericalFailure("matrix_exponential: Hermitian eigensolve failed");
        }
        const Vector phases = (scale * es.eigenvalues().cast<Complex>().array()).exp();
        result = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    } else {
        result = (scale * h.matrix()).exp();
    }
    if (!result.allFinite()) {
        throw NumericalFailure("matrix_exponential: non-finite result");
    }
    return Operator(std::move(result));
}

std::vector<Eigenpair> eigendecompose(const Operator& h) {
    if (h.dim() > max_dimension()) {
        throw Overflow("eigendecompose: dim " + std::to_string(h.dim()) + " exceeds max dimension");
    }
    std::vector<Eigenpair> pairs;
    pairs.reserve(static_cast<std::size_t>(h.dim()));
    if (h.is_hermitian()) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
        if (es.info() != Eigen::Success) throw NumericalFailure("eigendecompose: solver failed");
        for (Index i = 0; i < h.dim(); ++i) {
            pairs.push_back({Complex(es.eigenvalues()(i), 0.0), StateVector(es.eigenvectors().col(i))});
        }
    } else {
        Eigen::ComplexEigenSolver<Matrix> es(h.matrix());
        if (es.info() != Eigen::Success) throw NumericalFailure("eigendecompose: solver failed");
        for (Index i = 0; i < h.dim(); ++i) {
            pairs.push_back({es.eigenvalues()(i), StateVector(es.eigenvectors().col(i).normalized())});
        }
        std::sort(pairs.begin(), pairs.end(), [](const Eigenpair& a, const Eigenpair& b) {
            if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
            return a.value.imag() < b.value.imag();
        });
    }
    // Never return silently wrong pairs.
    const double tol = 1e-9 * (1.0 + h.frobenius_norm());
    for (const auto& [value, vec] : pairs) {
        const double resid = (h.matrix() * vec.amplitudes() - value * vec.amplitudes()).norm();
        if (resid > tol) {
            throw NumericalFailure("eigendecompose: residual " + std::to_string(resid) +
                                   " exceeds tolerance (non-normal or defective input?)");
        }
    }
    return pairs;
}

// ------------------------- Seeded Hermitian ensemble -------------------------

namespace {

// Box-Muller over raw mt19937_64 draws; bit-portable, unlike
// std::normal_distribution whose algorithm is implementation-defined.
class ComplexGaussian {
public:
    explicit ComplexGaussian(std::uint64_t seed) : rng_(seed) {}

    Complex operator()() {
        const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
        const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;          // [0,1)
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace

Operator random_hermitian(Index dim, std::uint64_t seed) {
    if (dim < 1) throw Error("random_hermitian: dim must be >= 1");
    ComplexGaussian gauss(seed);
    Matrix m(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        for (Index j = 0; j < dim; ++j) m(i, j) = gauss();
    }
    return Operator(0.5 * (m + m.adjoint().eval()));
}

// --------------------------- Common constants -------------------------------

Operator pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return Operator(std::move(m));
}

Operator pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return Operator(std::move(m));
}

Operator pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return Operator(std::move(m));
}

}  // namespace multitime
