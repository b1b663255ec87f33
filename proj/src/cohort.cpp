#include "specbio/cohort.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "specbio/errors.hpp"

namespace specbio {

namespace {

void validate_names(const std::vector<std::string>& names, std::size_t p) {
    if (names.size() != p) throw InputError("biomarker name count does not match column count");
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) throw InputError("biomarker names must be non-empty");
        if (!seen.insert(n).second) throw InputError("duplicate biomarker name: " + n);
    }
}

}  // namespace

CohortMatrix center_columns(const Matrix& raw, const std::vector<std::string>& names,
                            const std::vector<std::string>& patient_ids) {
    const std::size_t n = raw.rows(), p = raw.cols();
    if (n < 2) throw InputError("cohort requires n >= 2 patients");
    if (p < 1) throw InputError("cohort requires p >= 1 biomarkers");
    validate_names(names, p);
    for (double v : raw.data())
        if (!std::isfinite(v)) throw InputError("cohort matrix contains non-finite entries");

    CohortMatrix out;
    out.data = raw;
    out.biomarker_names = names;
    out.patient_ids = patient_ids;
    out.centered = true;
    out.column_means.assign(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += raw(i, j);
        mean /= static_cast<double>(n);
        out.column_means[j] = mean;
        for (std::size_t i = 0; i < n; ++i) out.data(i, j) -= mean;
    }
    return out;
}

SpectralModel build_hamiltonian(const CohortMatrix& cohort) {
    if (!cohort.centered) throw InputError("build_hamiltonian requires a centered cohort");
    const std::size_t n = cohort.n(), p = cohort.p();

    SymMatrix h(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += cohort.data(k, i) * cohort.data(k, j);
            h.set(i, j, s / static_cast<double>(n));
        }
    }

    SpectralModel model;
    model.H = h;
    model.eigen = symmetric_eigendecompose(h);
    model.n_source = n;
    model.aspect_gamma = static_cast<double>(p) / static_cast<double>(n);
    model.biomarker_names = cohort.biomarker_names;
    model.column_means = cohort.column_means.size() == p ? cohort.column_means
                                                         : std::vector<double>(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        bool all_zero = true;
        for (std::size_t i = 0; i < n; ++i)
            if (cohort.data(i, j) != 0.0) { all_zero = false; break; }
        if (all_zero) model.zero_variance_columns.push_back(j);
    }
    return model;
}

SpectralModel model_from_matrix(const SymMatrix& h, double gamma, std::size_t n_source,
                                const std::vector<std::string>& names) {
    if (gamma <= 0.0) throw InputError("aspect ratio gamma must be positive");
    validate_names(names, h.dim());
    SpectralModel model;
    model.H = h;
    model.eigen = symmetric_eigendecompose(h);
    model.n_source = n_source;
    model.aspect_gamma = gamma;
    model.biomarker_names = names;
    return model;
}

std::pair<double, double> mp_support(double sigma2, double gamma) {
    if (sigma2 <= 0.0) throw InputError("mp_support: sigma2 must be positive");
    if (gamma <= 0.0) throw InputError("mp_support: gamma must be positive");
    const double sigma = std::sqrt(sigma2);
    const double rg = std::sqrt(gamma);
    const double lo = sigma * (1.0 - rg), hi = sigma * (1.0 + rg);
    return {lo * lo, hi * hi};
}

BulkModel estimate_bulk(const SpectralModel& model) {
    const std::size_t p = model.p();
    const std::size_t rank = std::min<std::size_t>(model.n_source > 0 ? model.n_source : p, p);
    const auto& lam = model.eigen.values;
    const double lam1 = lam.empty() ? 0.0 : lam[0];

    std::vector<double> bulk_candidates;
    for (std::size_t k = 0; k < rank; ++k)
        if (lam[k] > 1e-12 * std::max(1.0, lam1)) bulk_candidates.push_back(lam[k]);
    if (bulk_candidates.size() < 5)
        throw InputError("estimate_bulk requires at least 5 nonzero eigenvalues");

    const double gamma = model.aspect_gamma;
    double sigma2 = 0.0;
    for (double v : bulk_candidates) sigma2 += v;
    sigma2 /= static_cast<double>(bulk_candidates.size());

    std::vector<double> iterates{sigma2};
    bool converged = false;
    int iter = 0;
    for (; iter < 20; ++iter) {
        const double edge = mp_support(sigma2, gamma).second;
        double sum = 0.0;
        std::size_t count = 0;
        for (double v : bulk_candidates) {
            if (v <= edge) { sum += v; ++count; }
        }
        if (count == 0)
            throw NumericalError("estimate_bulk: every eigenvalue sits above the MP edge");
        const double next = sum / static_cast<double>(count);
        iterates.push_back(next);
        if (std::fabs(next - sigma2) <= 1e-6 * sigma2) {
            sigma2 = next;
            converged = true;
            break;
        }
        sigma2 = next;
    }
    if (!converged) {
        std::ostringstream os;
        os << "estimate_bulk: fixed point did not converge in 20 iterations; iterates:";
        for (double v : iterates) os << " " << v;
        throw NumericalError(os.str());
    }

    BulkModel bulk;
    bulk.sigma2 = sigma2;
    bulk.gamma = gamma;
    auto edges = mp_support(sigma2, gamma);
    bulk.lower_edge = edges.first;
    bulk.upper_edge = edges.second;
    // At finite n the top noise eigenvalue fluctuates around the asymptotic
    // edge on the Tracy-Widom scale n^(-2/3); counting strictly against the
    // edge would flag pure noise as signal. Allow three fluctuation widths.
    const double n_eff = model.n_source > 0 ? static_cast<double>(model.n_source)
                                            : static_cast<double>(p) / gamma;
    const double tw_scale = sigma2 * std::pow(1.0 + std::sqrt(gamma), 4.0 / 3.0) *
                            std::pow(gamma, -1.0 / 6.0) * std::pow(n_eff, -2.0 / 3.0);
    const double detection_edge = bulk.upper_edge + 3.0 * tw_scale;
    for (double v : bulk_candidates)
        if (v > detection_edge) ++bulk.n_above_edge;
    bulk.iterations = iter + 1;
    return bulk;
}

bool bbp_detectable(double theta, double gamma) {
    if (theta < 0.0) throw InputError("bbp_detectable: theta must be >= 0");
    if (gamma <= 0.0) throw InputError("bbp_detectable: gamma must be positive");
    return theta > std::sqrt(gamma);
}

}  // namespace specbio
