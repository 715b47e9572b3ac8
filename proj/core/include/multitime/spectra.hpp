// spectra.hpp — Non-Hermitian diagnostics: Hermiticity defect, complex
// spectra, norm decay under non-unitary evolution, and the gate deciding
// whether an operator admits a unitary (Schroedinger-picture) treatment.

#pragma once

#include <utility>
#include <vector>

#include "multitime/opalg.hpp"

namespace multitime {

struct SpectralReport {
    bool hermitian = false;
    double hermiticity_defect = 0.0;       // ||H - H^dag||_F / (1 + ||H||_F)
    std::vector<Complex> eigenvalues;
    double max_imag = 0.0;                 // max |Im lambda|
};

// Throws NumericalFailure from the eigensolver (reported, never swallowed).
SpectralReport spectral_report(const Operator& h);

// ||exp(-iHt) psi0||^2 per grid point. Constant 1 for Hermitian H; for
// normal H with eigenvalue E - i*gamma/2 and psi0 the eigenstate, decays as
// exp(-gamma t). psi0 must be normalized.
std::vector<std::pair<double, double>> norm_decay_curve(const Operator& h,
                                                        const StateVector& psi0,
                                                        const std::vector<double>& t_grid);

enum class PictureDecision { AdmitsUnitaryPicture, ComplexSpectrumDetected };

struct GateResult {
    PictureDecision decision;
    SpectralReport report;
    bool admits() const { return decision == PictureDecision::AdmitsUnitaryPicture; }
};

// Hermiticity gate consulted before running unitary-formalism scenarios.
// Never throws; if the eigensolver fails the decision still stands on the
// Hermiticity defect and the report carries no eigenvalues.
GateResult schroedinger_picture_gate(const Operator& h);

}  // namespace multitime
