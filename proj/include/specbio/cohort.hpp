#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specbio/linalg.hpp"
#include "specbio/matrix.hpp"

namespace specbio {

/// n x p cohort measurement matrix. Column j holds biomarker
/// biomarker_names[j] across patients.
struct CohortMatrix {
    Matrix data;                              // n x p
    std::vector<std::string> biomarker_names; // unique, non-empty
    std::vector<std::string> patient_ids;     // may be empty for synthetic data
    std::vector<double> column_means;         // means removed by center_columns
    bool centered = false;

    std::size_t n() const { return data.rows(); }
    std::size_t p() const { return data.cols(); }
};

/// Covariance operator H = X^T X / n with its eigendecomposition and the
/// column means used for centering (needed to score new patients later).
struct SpectralModel {
    SymMatrix H{1};
    EigenSystem eigen;
    std::size_t n_source = 0;
    double aspect_gamma = 0.0;  // p / n
    std::vector<std::string> biomarker_names;
    std::vector<double> column_means;        // empty when loaded without a cohort
    std::vector<std::size_t> zero_variance_columns;

    std::size_t p() const { return H.dim(); }
};

/// Marchenko-Pastur bulk characterization of a sample spectrum.
struct BulkModel {
    double sigma2 = 0.0;
    double gamma = 0.0;
    double lower_edge = 0.0;
    double upper_edge = 0.0;
    std::size_t n_above_edge = 0;
    int iterations = 0;
};

/// Subtract column means. Zero-variance columns are allowed and reported
/// through SpectralModel, never dropped.
CohortMatrix center_columns(const Matrix& raw, const std::vector<std::string>& names,
                            const std::vector<std::string>& patient_ids = {});

/// H = X^T X / n for a centered cohort, with its full eigensystem.
SpectralModel build_hamiltonian(const CohortMatrix& cohort);

/// Build a model directly from a symmetric matrix; gamma must be supplied.
SpectralModel model_from_matrix(const SymMatrix& h, double gamma, std::size_t n_source,
                                const std::vector<std::string>& names);

/// Marchenko-Pastur support endpoints [(sigma(1-sqrt(g)))^2, (sigma(1+sqrt(g)))^2].
std::pair<double, double> mp_support(double sigma2, double gamma);

/// Fixed-point bulk-variance estimate: sigma2 <- mean of eigenvalues at or
/// below the current upper edge, iterated to 1e-6 relative (max 20 rounds).
BulkModel estimate_bulk(const SpectralModel& model);

/// BBP criterion: a spike of strength theta separates from the bulk iff
/// theta > sqrt(gamma), strictly.
bool bbp_detectable(double theta, double gamma);

}  // namespace specbio
