#include "multitime/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace multitime {

namespace {

constexpr double kComponentTol = 1e-8;

Matrix reduced(const Matrix& basis_left, const Matrix& h, const Matrix& basis_right) {
    return basis_left.adjoint() * h * basis_right;
}

}  // namespace

PartitionBlocks decompose(const Operator& h, const Projector& p_a) {
    if (!h.is_hermitian()) {
        throw NotHermitian("decompose: H has hermiticity defect " +
                           std::to_string(h.hermiticity_defect()));
    }
    if (h.dim() != p_a.dim()) {
        throw DimensionMismatch("decompose: H dim " + std::to_string(h.dim()) +
                                " != projector dim " + std::to_string(p_a.dim()));
    }
    if (p_a.rank() == 0 || p_a.rank() == h.dim()) {
        throw TrivialPartition("decompose: projector rank " + std::to_string(p_a.rank()) +
                               " leaves no complementary subspace");
    }
    const Projector p_b = p_a.complement();
    const Matrix& pa = p_a.op().matrix();
    const Matrix& pb = p_b.op().matrix();
    const Matrix& hm = h.matrix();
    return {p_a,
            p_b,
            Operator(pa * hm * pa),
            Operator(pa * hm * pb),
            Operator(pb * hm * pa),
            Operator(pb * hm * pb)};
}

double block_commutator_residual(const PartitionBlocks& blocks) {
    return commutator(blocks.h_aa, blocks.h_bb).frobenius_norm();
}

Matrix range_basis(const Projector& p) {
    Eigen::JacobiSVD<Matrix> svd(p.op().matrix(), Eigen::ComputeThinU);
    Matrix basis = svd.matrixU().leftCols(p.rank());
    for (Index j = 0; j < basis.cols(); ++j) {
        Index imax = 0;
        double best = -1.0;
        for (Index i = 0; i < basis.rows(); ++i) {
            const double mag = std::abs(basis(i, j));
            if (mag > best) {
                best = mag;
                imax = i;
            }
        }
        const Complex pivot = basis(imax, j);
        if (std::abs(pivot) > 0.0) basis.col(j) *= std::abs(pivot) / pivot;
    }
    return basis;
}

Operator effective_hamiltonian(const PartitionBlocks& blocks, Complex energy) {
    const Matrix va = range_basis(blocks.p_a);
    const Matrix vb = range_basis(blocks.p_b);
    const Matrix h = blocks.h_aa.matrix() + blocks.h_ab.matrix() + blocks.h_ba.matrix() +
                     blocks.h_bb.matrix();

    const Matrix haa = reduced(va, h, va);
    const Matrix hab = reduced(va, h, vb);
    const Matrix hba = reduced(vb, h, va);
    const Matrix hbb = reduced(vb, h, vb);

    Matrix resolvent_arg = -hbb;
    resolvent_arg.diagonal().array() += energy;
    Eigen::JacobiSVD<Matrix> svd(resolvent_arg, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    const double floor = kRankTol * (1.0 + std::abs(energy) + blocks.h_bb.frobenius_norm());
    if (smin < floor) {
        throw ResolventSingular("effective_hamiltonian: E within " + std::to_string(smin) +
                                " of the H_BB spectrum");
    }
    return Operator(haa + hab * svd.solve(hba));
}

std::vector<FeshbachEntry> feshbach_eigenconsistency(const Operator& h, const Projector& p_a) {
    const PartitionBlocks blocks = decompose(h, p_a);
    const Matrix va = range_basis(blocks.p_a);
    const std::vector<Eigenpair> pairs = eigendecompose(h);

    std::vector<FeshbachEntry> entries;
    entries.reserve(pairs.size());
    for (const auto& [value, vec] : pairs) {
        const double energy = value.real();
        const Vector psi_a = va.adjoint() * vec.amplitudes();
        const double comp = psi_a.norm();
        if (comp <= kComponentTol) {
            entries.push_back({energy, 0.0, FeshbachStatus::SmallComponent});
            continue;
        }
        try {
            const Operator heff = effective_hamiltonian(blocks, Complex(energy, 0.0));
            const double resid = (heff.matrix() * psi_a - energy * psi_a).norm() / comp;
            entries.push_back({energy, resid, FeshbachStatus::Ok});
        } catch (const ResolventSingular&) {
            entries.push_back({energy, 0.0, FeshbachStatus::ResolventSingular});
        }
    }
    return entries;
}

double dirac_frenkel_error(const Operator& h, const Projector& p_v, const StateVector& psi) {
    if (h.dim() != p_v.dim() || h.dim() != psi.dim()) {
        throw DimensionMismatch("dirac_frenkel_error: dims disagree");
    }
    const Matrix q = Matrix::Identity(h.dim(), h.dim()) - p_v.op().matrix();
    const double outside = (q * psi.amplitudes()).norm();
    if (outside > 1e-12) {
        throw NotInSubspace("dirac_frenkel_error: ||(I-P)psi|| = " + std::to_string(outside));
    }
    return (q * (h.matrix() * psi.amplitudes())).norm();
}

double projected_spectrum_min_gap(const Operator& h, const Projector& p_a) {
    const PartitionBlocks blocks = decompose(h, p_a);  // validates the inputs
    const Matrix va = range_basis(blocks.p_a);
    const std::vector<Eigenpair> sub = eigendecompose(Operator(reduced(va, h.matrix(), va)));
    const std::vector<Eigenpair> full = eigendecompose(h);

    double min_gap = std::numeric_limits<double>::infinity();
    for (const auto& [value, vec] : full) {
        if ((va.adjoint() * vec.amplitudes()).norm() <= kComponentTol) continue;
        for (const auto& [sub_value, sub_vec] : sub) {
            min_gap = std::min(min_gap, std::abs(value - sub_value));
        }
    }
    return min_gap;
}

}  // namespace multitime
