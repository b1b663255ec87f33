#pragma once

#include <vector>

#include "specbio/cohort.hpp"

namespace specbio {

/// Z(beta) and F(beta) = -log Z / beta over a beta grid.
struct ThermoProfile {
    std::vector<double> beta_grid;  // ascending, positive
    std::vector<double> z_values;
    std::vector<double> f_values;
    double lambda_min = 0.0;        // large-beta asymptote of F
    double lambda_max = 0.0;
};

/// Z = sum_k exp(-beta lambda_k), evaluated with the smallest eigenvalue
/// factored out so large beta stays stable.
double partition_function(const SpectralModel& model, double beta);

ThermoProfile free_energy(const SpectralModel& model, const std::vector<double>& beta_grid);

/// 64 log-spaced points over [1e-2, 1e2] / lambda_1 (falls back to [1e-2, 1e2]
/// when the spectrum is all zero).
std::vector<double> default_beta_grid(const SpectralModel& model, std::size_t points = 64);

}  // namespace specbio
