#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specbio/cohort.hpp"

namespace specbio {

enum class TransferVerdict { well_conditioned, marginal, ill_conditioned };

/// Thresholds gating a source->target basis transfer. Artifact policy,
/// CLI-configurable; the underlying criteria are qualitative.
struct TransferPolicy {
    double dk_ratio_well = 0.2;
    double theta1_well_rad = 10.0 * 3.14159265358979323846 / 180.0;
    double theta1_ill_rad = 45.0 * 3.14159265358979323846 / 180.0;
    double dk_ratio_ill = 1.0;
};

struct TransferDiagnostics {
    std::size_t r = 0;
    std::vector<double> principal_angles;  // ascending, radians
    double subspace_distance = 0.0;        // ||sin Theta||_F
    double leading_bound = 0.0;            // 2 sin(theta_1 / 2)
    std::optional<double> dk_ratio;        // absent when the source eigengap degenerates
    bool dk_vacuous = false;
    TransferVerdict verdict = TransferVerdict::ill_conditioned;
    std::string reason;
};

/// Principal angles between the column spaces of two p x r orthonormal
/// bases, via the SVD of Qs^T Qt. Ascending.
std::vector<double> principal_angles(const Matrix& qs, const Matrix& qt);

/// d = sqrt(sum sin^2 theta_k).
double subspace_distance(const std::vector<double>& angles);

/// Bound on |x.q1_s - x.q1_t| for ||x|| <= m, sign-aligned eigenvectors.
double transfer_bound(double m, double theta1);

/// Full gate: angles on the top-r eigenvectors, Davis-Kahan ratio on the
/// source eigengap (asserted against sin theta_1 when non-vacuous), verdict.
TransferDiagnostics transfer_verdict(const SpectralModel& hs, const SpectralModel& ht,
                                     std::size_t r = 1, const TransferPolicy& policy = {});

const char* to_string(TransferVerdict v);

}  // namespace specbio
