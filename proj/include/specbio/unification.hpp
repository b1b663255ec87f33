#pragma once

#include <optional>
#include <vector>

#include "specbio/cohort.hpp"

namespace specbio {

/// Two-class scatter matrices, equal priors:
/// S_B = (n0 nd / n)(mu_d - mu_0)(mu_d - mu_0)^T, S_W = (n0/n) H0 + (nd/n) Hd.
struct ScatterPair {
    SymMatrix between{1};
    SymMatrix within{1};
    std::size_t n0 = 0, nd = 0;
    std::vector<double> mu0, mud;
};

struct PcaResult {
    std::vector<double> eigenvalues;  // top r
    Matrix modes;                     // p x r, columns of the model eigensystem
};

struct LdaResult {
    bool has_direction = false;       // false when class means coincide
    std::vector<double> direction;    // unit vector w*
    double generalized_eigenvalue = 0.0;
};

struct CcaResult {
    std::vector<double> correlations;  // rho_k in [0,1], descending
    Matrix x_directions;               // p1 x r
    Matrix y_directions;               // p2 x r
};

/// Top-r eigenpairs of the cohort Hamiltonian; literal delegation, the
/// returned columns are bit-identical to build_hamiltonian's.
PcaResult pca_modes(const CohortMatrix& cohort, std::size_t r);

ScatterPair scatter_pair(const CohortMatrix& healthy_raw, const CohortMatrix& disease_raw);

/// Leading generalized eigenvector of S_B w = lambda S_W w, unit norm.
LdaResult lda_direction(const CohortMatrix& healthy_raw, const CohortMatrix& disease_raw,
                        double ridge = 0.0);

/// Whitened-SVD canonical correlations between two views with equal n.
CcaResult cca_modes(const CohortMatrix& x, const CohortMatrix& y, std::size_t r,
                    double ridge = 0.0);

}  // namespace specbio
