#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specbio/cohort.hpp"

namespace specbio {

enum class DkStatus {
    certified,     // bound <= 1 and (for the leading mode) asserted
    vacuous,       // bound > 1, reported but uninformative
    inapplicable,  // eigengap below 1e-9, degenerate eigenspace
};

struct ModeRecord {
    std::size_t mode = 0;          // 1-based
    double lambda0 = 0.0;
    double lambdad = 0.0;
    double shift = 0.0;            // lambda_d - lambda_0
    double angle = 0.0;            // radians, in [0, pi/2]
    double weyl_bound = 0.0;       // ||dH||_2
    std::optional<double> dk_bound;
    DkStatus dk_status = DkStatus::inapplicable;
    bool dk_extended = false;      // interior-mode bound uses the two-sided gap
    bool crossing_suspected = false;
};

/// Full spectral fingerprint of Hd against H0.
struct PerturbationReport {
    SymMatrix delta_H{1};
    double delta_norm = 0.0;
    std::vector<ModeRecord> modes;
    double phi = 0.0;              // (lambda1_d - lambda1_0) / lambda1_0
    double phi_bound = 0.0;        // ||dH||_2 / lambda1_0
    double eigengap0 = 0.0;        // lambda1_0 - lambda2_0
};

struct WeylResult {
    std::vector<double> shifts;
    double delta_norm = 0.0;
};

struct DkResult {
    double angle = 0.0;
    std::optional<double> bound;
    DkStatus status = DkStatus::inapplicable;
    bool extended = false;
};

/// dH = Hd - H0. Requires matching dimension and biomarker names.
SymMatrix perturbation_delta(const SpectralModel& h0, const SpectralModel& hd);

/// Rank-paired eigenvalue shifts with the Weyl certificate
/// |shift_k| <= ||dH||_2 + 1e-9 asserted for every mode.
WeylResult weyl_check(const SpectralModel& h0, const SpectralModel& hd);

/// Phi = (lambda1_d - lambda1_0) / lambda1_0.
double disruption_index(const SpectralModel& h0, const SpectralModel& hd);

/// Rotation angle of mode k (1-based) with the Davis-Kahan bound. The
/// leading-mode certificate is asserted when non-vacuous; interior modes use
/// the two-sided gap and are reported as extended without assertion.
DkResult davis_kahan_check(const SpectralModel& h0, const SpectralModel& hd, std::size_t k);

PerturbationReport fingerprint(const SpectralModel& h0, const SpectralModel& hd);

}  // namespace specbio
