#pragma once

#include <string>
#include <vector>

#include "specbio/cohort.hpp"

namespace specbio {

/// Per-patient spectral score. composite = sum_k w_k * projections_k^2 over
/// admissible modes, w_k = (1/sigma2 - 1/lambda_k)/2.
struct ScoreProfile {
    std::string patient_id;
    std::vector<double> projections;          // pi_k = x . q_k
    std::vector<double> weights;              // NaN on excluded modes
    double composite = 0.0;                   // Pi
    double sigma2_used = 0.0;
    double constant = 0.0;                    // C = log(det H0 / det Hd)/2 over admissible modes
    std::vector<std::size_t> excluded_modes;  // 0-based indices below the eigenvalue floor
    bool truncated = false;                   // an excluded mode carried nonzero projection
};

/// Generalized eigenpairs of Hd v = nu H0 v, nu descending, H0-orthonormal v.
struct DiscriminantModes {
    std::vector<double> values;  // nu, descending
    Matrix vectors;              // p x p, column k pairs with values[k]
};

/// Relative floor under which disease eigenvalues are treated as zero rank.
constexpr double kEigenvalueFloorRel = 1e-10;

/// Projections of x onto the disease eigenbasis.
std::vector<double> mode_scores(const std::vector<double>& x, const SpectralModel& hd);

ScoreProfile composite_score(const std::vector<double>& x, const SpectralModel& hd,
                             double sigma2, const std::string& patient_id = "");

/// Direct Gaussian log-likelihood ratio, computed by Cholesky solve and
/// log-determinant, independent of the eigendecomposition path.
double llr_oracle(const std::vector<double>& x, const SpectralModel& hd, double sigma2);

/// Whitened solve of the generalized problem: H0 = L L^T, eigendecompose
/// L^-1 Hd L^-T, back-transform v = L^-T w.
DiscriminantModes discriminant_modes(const SpectralModel& h0, const SpectralModel& hd,
                                     double ridge = 0.0);

}  // namespace specbio
