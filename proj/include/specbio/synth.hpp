#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "specbio/cohort.hpp"

namespace specbio {

/// Deterministic Gaussian source: MT19937-64 with Box-Muller (basic form,
/// u1 in (0,1]). Identical seeds give bitwise-identical streams; parallel
/// draws split as seed + draw index.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    static Rng split(std::uint64_t seed, std::uint64_t index) { return Rng(seed + index); }

    double uniform();  // (0, 1]
    double normal();   // standard normal

  private:
    std::mt19937_64 engine_;  // exactly specified by the standard; portable
    bool has_spare_ = false;
    double spare_ = 0.0;
};

enum class Regime {
    no_interdependency,
    healthy_coordination,
    gain_of_coordination,
    loss_of_coordination,
};

/// One of the four covariance regimes. Structure is two overlapping
/// biomarker blocks with additive within-block coupling; gain doubles the
/// coupling (clipped to the largest PD-safe scale), loss shrinks it.
struct RegimeSpec {
    Regime regime = Regime::healthy_coordination;
    std::size_t p = 36;
    std::size_t n = 500;
    std::uint64_t seed = 0;
    double healthy_strength = 0.3;
    double gain_factor = 2.0;
    double loss_factor = 0.3;
};

struct RegimeCovariance {
    SymMatrix sigma{1};
    double ridge_applied = 0.0;  // diagonal repair, 0 when none was needed
    double strength_used = 0.0;  // coupling after any PD clipping
};

struct TwoGroupSpec {
    std::size_t p = 10;
    std::size_t n_progressive = 20;
    std::size_t n_stable = 20;
    std::size_t timepoints = 8;
    double divergence = 0.4;  // drift per timepoint along the hidden direction
    double noise_sd = 0.5;
    std::uint64_t seed = 0;
};

struct TwoGroupCohort {
    CohortMatrix cohort;       // rows are patient-time observations, uncentered
    std::vector<int> labels;   // 1 progressive, 0 stable, per row
};

/// n i.i.d. zero-mean Gaussian rows with covariance sigma, via Cholesky.
CohortMatrix gaussian_cohort(const SymMatrix& sigma, std::size_t n, std::uint64_t seed);

RegimeCovariance regime_covariance(const RegimeSpec& spec);

/// Sample a cohort for a regime: population covariance + Gaussian draw.
CohortMatrix regime_cohort(const RegimeSpec& spec);

/// Spiked model: sigma2 * (I + sum theta_k u_k u_k^T), u_k seeded random
/// orthonormal directions, p = round(gamma * n).
CohortMatrix spiked_ensemble(const std::vector<double>& thetas, double gamma, double sigma2,
                             std::size_t n, std::uint64_t seed);

TwoGroupCohort two_group_demo(const TwoGroupSpec& spec);

/// Separation of the two groups along the leading eigenmode of the pooled
/// Hamiltonian: rank-sum AUC of the signed projection, label 1 positive.
double eigenplane_auc(const TwoGroupCohort& demo);

Regime regime_from_string(const std::string& name);
const char* to_string(Regime r);

}  // namespace specbio
