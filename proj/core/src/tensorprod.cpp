#include "multitime/tensorprod.hpp"

#include <cmath>
#include <string>
#include <utility>

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

namespace multitime {

namespace {

const Complex kMinusI{0.0, -1.0};

void require_normalized(const StateVector& psi, const char* name) {
    if (!psi.is_normalized(1e-10)) {
        throw NotNormalized(std::string(name) + ": norm " + std::to_string(psi.norm()));
    }
}

}  // namespace

TensorDecomposition::TensorDecomposition(Operator h_a, Operator h_b, Operator interaction)
    : h_a_(std::move(h_a)), h_b_(std::move(h_b)), interaction_(std::move(interaction)) {
    if (interaction_.dim() != h_a_.dim() * h_b_.dim()) {
        throw DimensionMismatch("TensorDecomposition: interaction dim " +
                                std::to_string(interaction_.dim()) + " != " +
                                std::to_string(h_a_.dim() * h_b_.dim()));
    }
}

TensorDecomposition TensorDecomposition::non_interacting(Operator h_a, Operator h_b) {
    const Index d = h_a.dim() * h_b.dim();
    return {std::move(h_a), std::move(h_b), Operator::zero(d)};
}

Operator assemble(const TensorDecomposition& dec) {
    const Operator kron_sum = tensor(dec.h_a(), Operator::identity(dec.dim_b())) +
                              tensor(Operator::identity(dec.dim_a()), dec.h_b());
    return kron_sum + dec.interaction();
}

double product_ansatz_residual(const TensorDecomposition& dec, const StateVector& psi_a,
                               const StateVector& psi_b, double t) {
    require_normalized(psi_a, "product_ansatz_residual: psi_a");
    require_normalized(psi_b, "product_ansatz_residual: psi_b");
    if (psi_a.dim() != dec.dim_a() || psi_b.dim() != dec.dim_b()) {
        throw DimensionMismatch("product_ansatz_residual: state dims do not match factors");
    }
    const Operator h = assemble(dec);
    const Vector full = matrix_exponential(h, kMinusI * t).matrix() *
                        Eigen::kroneckerProduct(psi_a.amplitudes(), psi_b.amplitudes()).eval();
    const Vector ua = matrix_exponential(dec.h_a(), kMinusI * t).matrix() * psi_a.amplitudes();
    const Vector ub = matrix_exponential(dec.h_b(), kMinusI * t).matrix() * psi_b.amplitudes();
    return (full - Eigen::kroneckerProduct(ua, ub).eval()).norm();
}

BipartiteState::BipartiteState(Index d_a, Index d_b, Vector amplitudes)
    : d_a_(d_a), d_b_(d_b), amps_(std::move(amplitudes)) {
    if (d_a_ < 1 || d_b_ < 1 || amps_.size() != d_a_ * d_b_) {
        throw DimensionMismatch("BipartiteState: amplitudes size " + std::to_string(amps_.size()) +
                                " != " + std::to_string(d_a_) + "*" + std::to_string(d_b_));
    }
}

BipartiteState BipartiteState::product(const StateVector& psi_a, const StateVector& psi_b) {
    return {psi_a.dim(), psi_b.dim(),
            Eigen::kroneckerProduct(psi_a.amplitudes(), psi_b.amplitudes()).eval()};
}

std::vector<double> schmidt_spectrum(const BipartiteState& psi) {
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMajor> reshaped(psi.amplitudes().data(), psi.dim_a(), psi.dim_b());
    Eigen::JacobiSVD<Matrix> svd(reshaped);
    const auto& sv = svd.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

double entanglement_entropy(const BipartiteState& psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
        throw NotNormalized("entanglement_entropy: ||psi|| = " + std::to_string(psi.norm()));
    }
    double entropy = 0.0;
    for (const double s : schmidt_spectrum(psi)) {
        const double p = s * s;
        if (p >= 1e-15) entropy -= p * std::log(p);
    }
    return entropy;
}

std::vector<SweepPoint> interaction_entanglement_sweep(const TensorDecomposition& dec,
                                                       const StateVector& psi_a,
                                                       const StateVector& psi_b,
                                                       const std::vector<double>& t_grid) {
    require_normalized(psi_a, "interaction_entanglement_sweep: psi_a");
    require_normalized(psi_b, "interaction_entanglement_sweep: psi_b");
    const Operator h = assemble(dec);
    const Vector psi0 = Eigen::kroneckerProduct(psi_a.amplitudes(), psi_b.amplitudes()).eval();

    std::vector<SweepPoint> points;
    points.reserve(t_grid.size());
    for (const double t : t_grid) {
        const Vector full = matrix_exponential(h, kMinusI * t).matrix() * psi0;
        const Vector ua = matrix_exponential(dec.h_a(), kMinusI * t).matrix() * psi_a.amplitudes();
        const Vector ub = matrix_exponential(dec.h_b(), kMinusI * t).matrix() * psi_b.amplitudes();
        const double residual = (full - Eigen::kroneckerProduct(ua, ub).eval()).norm();
        const BipartiteState evolved(dec.dim_a(), dec.dim_b(), full);
        points.push_back({t, residual, entanglement_entropy(evolved)});
    }
    return points;
}

}  // namespace multitime
