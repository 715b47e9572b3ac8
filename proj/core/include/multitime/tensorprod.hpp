// tensorprod.hpp — Bipartite tensor-product Hamiltonians H_A x 1 + 1 x H_B + J,
// the failure of per-factor evolution under interaction, and entanglement
// diagnostics (Schmidt spectrum, entropy).

#pragma once

#include <vector>

#include "multitime/opalg.hpp"

namespace multitime {

class TensorDecomposition {
public:
    // interaction must live on the product space (dim d_a * d_b).
    TensorDecomposition(Operator h_a, Operator h_b, Operator interaction);
    static TensorDecomposition non_interacting(Operator h_a, Operator h_b);

    const Operator& h_a() const { return h_a_; }
    const Operator& h_b() const { return h_b_; }
    const Operator& interaction() const { return interaction_; }
    Index dim_a() const { return h_a_.dim(); }
    Index dim_b() const { return h_b_.dim(); }

private:
    Operator h_a_;
    Operator h_b_;
    Operator interaction_;
};

// h_a x I + I x h_b + interaction.
Operator assemble(const TensorDecomposition& dec);

// || exp(-iHt)(psi_a x psi_b) - exp(-iH_A t)psi_a x exp(-iH_B t)psi_b ||_2.
// Zero for all t when the interaction vanishes. Inputs must be normalized.
double product_ansatz_residual(const TensorDecomposition& dec, const StateVector& psi_a,
                               const StateVector& psi_b, double t);

// Amplitudes indexed i*d_b + j for (i, j); the reshaped d_a x d_b matrix
// carries the Schmidt structure.
class BipartiteState {
public:
    BipartiteState(Index d_a, Index d_b, Vector amplitudes);
    static BipartiteState product(const StateVector& psi_a, const StateVector& psi_b);

    Index dim_a() const { return d_a_; }
    Index dim_b() const { return d_b_; }
    const Vector& amplitudes() const { return amps_; }
    double norm() const { return amps_.norm(); }

private:
    Index d_a_;
    Index d_b_;
    Vector amps_;
};

// Singular values of the reshaped amplitude matrix, non-increasing; their
// squares sum to ||psi||^2.
std::vector<double> schmidt_spectrum(const BipartiteState& psi);

// -sum p_k ln p_k with p_k the squared Schmidt values; weights below 1e-15
// are treated as exact zeros. Throws NotNormalized unless ||psi|| = 1 within
// 1e-10. Bounded by ln(min(d_a, d_b)).
double entanglement_entropy(const BipartiteState& psi);

struct SweepPoint {
    double t;
    double residual;
    double entropy;
};

// Per grid point: product-ansatz residual and entanglement entropy of the
// full evolute exp(-iHt)(psi_a x psi_b).
std::vector<SweepPoint> interaction_entanglement_sweep(const TensorDecomposition& dec,
                                                       const StateVector& psi_a,
                                                       const StateVector& psi_b,
                                                       const std::vector<double>& t_grid);

}  // namespace multitime
