#include "multitime/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace multitime {

SpectralReport spectral_report(const Operator& h) {
    SpectralReport report;
    report.hermiticity_defect = h.hermiticity_defect();
    report.hermitian = h.is_hermitian();
    for (const auto& pair : eigendecompose(h)) {
        report.eigenvalues.push_back(pair.value);
        report.max_imag = std::max(report.max_imag, std::abs(pair.value.imag()));
    }
    return report;
}

std::vector<std::pair<double, double>> norm_decay_curve(const Operator& h,
                                                        const StateVector& psi0,
                                                        const std::vector<double>& t_grid) {
    if (!psi0.is_normalized(1e-10)) {
        throw NotNormalized("norm_decay_curve: ||psi0|| = " + std::to_string(psi0.norm()));
    }
    if (h.dim() != psi0.dim()) throw DimensionMismatch("norm_decay_curve: dims disagree");
    std::vector<std::pair<double, double>> curve;
    curve.reserve(t_grid.size());
    for (const double t : t_grid) {
        const Vector psi_t = matrix_exponential(h, Complex(0.0, -t)).matrix() * psi0.amplitudes();
        curve.emplace_back(t, psi_t.squaredNorm());
    }
    return curve;
}

GateResult schroedinger_picture_gate(const Operator& h) {
    GateResult result;
    result.report.hermiticity_defect = h.hermiticity_defect();
    result.report.hermitian = h.is_hermitian();
    result.decision = result.report.hermitian ? PictureDecision::AdmitsUnitaryPicture
                                              : PictureDecision::ComplexSpectrumDetected;
    try {
        result.report = spectral_report(h);
    } catch (const NumericalFailure&) {
        // decision already stands on the defect; leave eigenvalues empty
    }
    return result;
}

}  // namespace multitime
