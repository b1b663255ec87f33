#include "specbio/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "specbio/errors.hpp"

namespace specbio {

double Rng::uniform() {
    // 53-bit mantissa; 1 - [0,1) lands in (0,1] so log() below is safe.
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return 1.0 - u;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

namespace {

std::vector<std::string> default_names(std::size_t p) {
    std::vector<std::string> names(p);
    int width = 1;
    for (std::size_t q = p; q >= 10; q /= 10) ++width;
    for (std::size_t j = 0; j < p; ++j) {
        std::string num = std::to_string(j + 1);
        names[j] = "bm" + std::string(width - num.size(), '0') + num;
    }
    return names;
}

std::vector<std::string> default_ids(std::size_t n) {
    std::vector<std::string> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = "synth-" + std::to_string(i + 1);
    return ids;
}

}  // namespace

CohortMatrix gaussian_cohort(const SymMatrix& sigma, std::size_t n, std::uint64_t seed) {
    if (n < 2) throw InputError("gaussian_cohort: n must be >= 2");
    const std::size_t p = sigma.dim();
    Matrix l = cholesky(sigma);

    Rng rng(seed);
    CohortMatrix cohort;
    cohort.data = Matrix(n, p);
    cohort.biomarker_names = default_names(p);
    cohort.patient_ids = default_ids(n);
    cohort.centered = false;
    std::vector<double> z(p);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) z[j] = rng.normal();
        for (std::size_t j = 0; j < p; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k <= j; ++k) s += l(j, k) * z[k];
            cohort.data(i, j) = s;
        }
    }
    return cohort;
}

RegimeCovariance regime_covariance(const RegimeSpec& spec) {
    const std::size_t p = spec.p;
    if (p < 3) throw InputError("regime_covariance: p must be >= 3");
    if (spec.healthy_strength < 0.0 || spec.gain_factor <= 0.0 || spec.loss_factor <= 0.0)
        throw InputError("regime_covariance: invalid regime parameters");

    RegimeCovariance out;
    out.sigma = SymMatrix::identity(p);
    if (spec.regime == Regime::no_interdependency) return out;

    // Two overlapping blocks, additive rank-style coupling (PD by design for
    // strength < 1/|min eig| of the coupling pattern).
    const std::size_t b1_lo = 0, b1_hi = p / 2;
    const std::size_t b2_lo = p / 3, b2_hi = std::min(p, p / 3 + p / 2);

    Matrix pattern(p, p);
    auto add_block = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            for (std::size_t j = lo; j < hi; ++j)
                if (i != j) pattern(i, j) += 1.0;
    };
    add_block(b1_lo, b1_hi);
    add_block(b2_lo, b2_hi);

    double strength = spec.healthy_strength;
    if (spec.regime == Regime::gain_of_coordination) strength *= spec.gain_factor;
    if (spec.regime == Regime::loss_of_coordination) strength *= spec.loss_factor;

    // Clip the coupling so the population covariance stays PD with margin.
    EigenSystem pat_eig = symmetric_eigendecompose(SymMatrix::from_dense(pattern));
    const double min_pat = pat_eig.values.back();
    if (min_pat < 0.0) {
        const double s_max = 0.95 * (1.0 - 1e-6) / (-min_pat);
        strength = std::min(strength, s_max);
    }
    out.strength_used = strength;

    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            out.sigma.set(i, j, strength * pattern(i, j));

    // Ridge repair if the clip was not enough (off-budget parameters error out).
    EigenSystem eig = symmetric_eigendecompose(out.sigma);
    const double min_eig = eig.values.back();
    if (min_eig < 1e-6) {
        out.ridge_applied = 1e-6 - min_eig;
        if (out.ridge_applied > 0.5)
            throw InputError("regime_covariance: parameters produce a non-PD covariance "
                             "beyond the repair budget");
        for (std::size_t i = 0; i < p; ++i)
            out.sigma.set(i, i, out.sigma(i, i) + out.ridge_applied);
    }
    return out;
}

CohortMatrix regime_cohort(const RegimeSpec& spec) {
    return gaussian_cohort(regime_covariance(spec).sigma, spec.n, spec.seed);
}

CohortMatrix spiked_ensemble(const std::vector<double>& thetas, double gamma, double sigma2,
                             std::size_t n, std::uint64_t seed) {
    if (gamma <= 0.0) throw InputError("spiked_ensemble: gamma must be positive");
    if (sigma2 <= 0.0) throw InputError("spiked_ensemble: sigma2 must be positive");
    for (double t : thetas)
        if (t <= -1.0) throw InputError("spiked_ensemble: spike strengths must exceed -1");
    const std::size_t p = static_cast<std::size_t>(std::llround(gamma * static_cast<double>(n)));
    if (p < 2) throw InputError("spiked_ensemble: round(gamma * n) must be >= 2");
    if (thetas.size() > p) throw InputError("spiked_ensemble: more spikes than dimensions");

    // Seeded random orthonormal spike directions via Gram-Schmidt.
    Rng dir_rng(seed ^ 0x9e3779b97f4a7c15ULL);
    Matrix u(p, thetas.size());
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        std::vector<double> v(p);
        for (auto& x : v) x = dir_rng.normal();
        for (std::size_t prev = 0; prev < k; ++prev) {
            double dot = 0.0;
            for (std::size_t i = 0; i < p; ++i) dot += v[i] * u(i, prev);
            for (std::size_t i = 0; i < p; ++i) v[i] -= dot * u(i, prev);
        }
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < p; ++i) u(i, k) = v[i] / nrm;
    }

    SymMatrix sigma = SymMatrix::identity(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) {
            double s = sigma(i, j);
            for (std::size_t k = 0; k < thetas.size(); ++k) s += thetas[k] * u(i, k) * u(j, k);
            sigma.set(i, j, sigma2 * s);
        }
    }
    return gaussian_cohort(sigma, n, seed);
}

TwoGroupCohort two_group_demo(const TwoGroupSpec& spec) {
    if (spec.p < 2) throw InputError("two_group_demo: p must be >= 2");
    if (spec.n_progressive < 1 || spec.n_stable < 1 || spec.timepoints < 1)
        throw InputError("two_group_demo: group sizes and timepoints must be >= 1");
    if (spec.divergence < 0.0 || spec.noise_sd <= 0.0)
        throw InputError("two_group_demo: divergence must be >= 0 and noise_sd > 0");

    const std::size_t rows = (spec.n_progressive + spec.n_stable) * spec.timepoints;
    Rng rng(spec.seed);
    // Hidden drift direction mixed evenly into every biomarker.
    const double mix = 1.0 / std::sqrt(static_cast<double>(spec.p));

    TwoGroupCohort demo;
    demo.cohort.data = Matrix(rows, spec.p);
    demo.cohort.biomarker_names = default_names(spec.p);
    demo.cohort.centered = false;
    demo.labels.reserve(rows);
    demo.cohort.patient_ids.reserve(rows);

    std::size_t row = 0;
    auto emit = [&](const std::string& id, double drift_t, int label) {
        for (std::size_t j = 0; j < spec.p; ++j)
            demo.cohort.data(row, j) = drift_t * mix + spec.noise_sd * rng.normal();
        demo.cohort.patient_ids.push_back(id);
        demo.labels.push_back(label);
        ++row;
    };
    for (std::size_t i = 0; i < spec.n_progressive; ++i)
        for (std::size_t t = 1; t <= spec.timepoints; ++t)
            emit("A" + std::to_string(i + 1) + "-t" + std::to_string(t),
                 spec.divergence * static_cast<double>(t), 1);
    for (std::size_t i = 0; i < spec.n_stable; ++i)
        for (std::size_t t = 1; t <= spec.timepoints; ++t)
            emit("B" + std::to_string(i + 1) + "-t" + std::to_string(t), 0.0, 0);
    return demo;
}

double eigenplane_auc(const TwoGroupCohort& demo) {
    CohortMatrix centered = center_columns(demo.cohort.data, demo.cohort.biomarker_names,
                                           demo.cohort.patient_ids);
    SpectralModel model = build_hamiltonian(centered);

    const std::size_t rows = centered.n();
    std::vector<double> score(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < centered.p(); ++j)
            s += centered.data(i, j) * model.eigen.vectors(j, 0);
        score[i] = s;
    }

    // Rank-sum AUC with midranks on ties.
    std::vector<std::size_t> order(rows);
    for (std::size_t i = 0; i < rows; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
    std::vector<double> rank(rows);
    std::size_t i = 0;
    while (i < rows) {
        std::size_t j = i;
        while (j + 1 < rows && score[order[j + 1]] == score[order[i]]) ++j;
        const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = mid;
        i = j + 1;
    }
    double rank_sum = 0.0;
    std::size_t n1 = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        if (demo.labels[r] == 1) {
            rank_sum += rank[r];
            ++n1;
        }
    }
    const std::size_t n0 = rows - n1;
    if (n1 == 0 || n0 == 0) throw InputError("eigenplane_auc: both groups must be non-empty");
    return (rank_sum - 0.5 * static_cast<double>(n1) * static_cast<double>(n1 + 1)) /
           (static_cast<double>(n1) * static_cast<double>(n0));
}

Regime regime_from_string(const std::string& name) {
    if (name == "no_interdependency") return Regime::no_interdependency;
    if (name == "healthy_coordination") return Regime::healthy_coordination;
    if (name == "gain_of_coordination") return Regime::gain_of_coordination;
    if (name == "loss_of_coordination") return Regime::loss_of_coordination;
    throw InputError("unknown regime: " + name);
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::no_interdependency: return "no_interdependency";
        case Regime::healthy_coordination: return "healthy_coordination";
        case Regime::gain_of_coordination: return "gain_of_coordination";
        case Regime::loss_of_coordination: return "loss_of_coordination";
    }
    return "unknown";
}

}  // namespace specbio
