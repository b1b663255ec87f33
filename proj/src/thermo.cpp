#include "specbio/thermo.hpp"

#include <algorithm>
#include <cmath>

#include "specbio/errors.hpp"

namespace specbio {

namespace {

// log Z via the shifted sum; exact to double precision for lambda >= 0.
double log_partition(const std::vector<double>& lam, double beta) {
    const double lmin = *std::min_element(lam.begin(), lam.end());
    double s = 0.0;
    for (double l : lam) s += std::exp(-beta * (l - lmin));
    return -beta * lmin + std::log(s);
}

}  // namespace

double partition_function(const SpectralModel& model, double beta) {
    if (beta <= 0.0) throw InputError("partition_function: beta must be positive");
    return std::exp(log_partition(model.eigen.values, beta));
}

ThermoProfile free_energy(const SpectralModel& model, const std::vector<double>& beta_grid) {
    if (beta_grid.empty()) throw InputError("free_energy: empty beta grid");
    for (std::size_t i = 0; i < beta_grid.size(); ++i) {
        if (beta_grid[i] <= 0.0) throw InputError("free_energy: beta grid must be positive");
        if (i > 0 && beta_grid[i] <= beta_grid[i - 1])
            throw InputError("free_energy: beta grid must be strictly ascending");
    }

    ThermoProfile prof;
    prof.beta_grid = beta_grid;
    prof.lambda_min = *std::min_element(model.eigen.values.begin(), model.eigen.values.end());
    prof.lambda_max = *std::max_element(model.eigen.values.begin(), model.eigen.values.end());
    prof.z_values.reserve(beta_grid.size());
    prof.f_values.reserve(beta_grid.size());
    for (double beta : beta_grid) {
        const double logz = log_partition(model.eigen.values, beta);
        prof.z_values.push_back(std::exp(logz));
        prof.f_values.push_back(-logz / beta);
    }
    return prof;
}

std::vector<double> default_beta_grid(const SpectralModel& model, std::size_t points) {
    if (points < 2) throw InputError("default_beta_grid: need at least 2 points");
    const double lam1 = model.eigen.values.empty() ? 0.0 : model.eigen.values[0];
    const double scale = lam1 > 0.0 ? lam1 : 1.0;
    const double lo = 1e-2 / scale, hi = 1e2 / scale;
    std::vector<double> grid(points);
    const double step = std::log(hi / lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = lo * std::exp(step * static_cast<double>(i));
    return grid;
}

}  // namespace specbio
