// partitions.hpp — Direct-sum decomposition of a Hermitian Hamiltonian by an
// orthogonal projector pair, the energy-dependent effective Hamiltonian with
// its resolvent self-energy, and subspace error diagnostics.

#pragma once

#include <vector>

#include "multitime/opalg.hpp"

namespace multitime {

// The four blocks P_A H P_A, P_A H P_B, P_B H P_A, P_B H P_B, stored at full
// dimension and supported on the respective subspaces.
struct PartitionBlocks {
    Projector p_a;
    Projector p_b;
    Operator h_aa;
    Operator h_ab;
    Operator h_ba;
    Operator h_bb;
};

// Throws NotHermitian, DimensionMismatch, TrivialPartition (rank 0 or full).
PartitionBlocks decompose(const Operator& h, const Projector& p_a);

// ||[H_AA, H_BB]||_F; mathematically zero for every Hermitian H and orthogonal
// projector pair since P_A P_B = 0.
double block_commutator_residual(const PartitionBlocks& blocks);

// Deterministic orthonormal basis of the projector's range (d x rank),
// ordered singular vectors with the largest-magnitude entry made real
// positive. Reproducible across runs and platforms.
Matrix range_basis(const Projector& p);

// H_AA + H_AB (E - H_BB)^-1 H_BA expressed in range_basis(p_a) coordinates
// (dimension rank x rank). Throws ResolventSingular when E collides with the
// H_BB spectrum (smallest singular value below kRankTol * (1+|E|+||H_BB||_F)).
Operator effective_hamiltonian(const PartitionBlocks& blocks, Complex energy);

enum class FeshbachStatus { Ok, SmallComponent, ResolventSingular };

struct FeshbachEntry {
    double energy;
    double residual;  // valid only when status == Ok
    FeshbachStatus status;
};

// For each eigenpair (E, psi) of Hermitian h: the fixed-point residual
// ||H_eff(E) psi_A - E psi_A|| / ||psi_A|| with psi_A the A-component in the
// range basis. Eigenvalues with ||psi_A|| <= 1e-8 or a singular resolvent are
// returned flagged instead of failing the whole call.
std::vector<FeshbachEntry> feshbach_eigenconsistency(const Operator& h, const Projector& p_a);

// ||(I - P_V) H psi||_2 — the component of the true time derivative pointing
// out of the subspace V. Throws NotInSubspace if psi is not in V.
double dirac_frenkel_error(const Operator& h, const Projector& p_v, const StateVector& psi);

// Minimum distance between any full eigenvalue with A-component > 1e-8 and the
// spectrum of H_AA restricted to A. Large values demonstrate that H_AA alone
// does not generate the subspace dynamics.
double projected_spectrum_min_gap(const Operator& h, const Projector& p_a);

}  // namespace multitime
