#include "specbio/prognostic.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "specbio/errors.hpp"

namespace specbio {

namespace {

void require_patient(const std::vector<double>& x, std::size_t p) {
    if (x.size() != p) {
        std::ostringstream os;
        os << "patient vector alignment error: got " << x.size() << " values, model has " << p;
        throw InputError(os.str());
    }
    for (double v : x)
        if (!std::isfinite(v)) throw InputError("patient vector contains non-finite entries");
}

}  // namespace

std::vector<double> mode_scores(const std::vector<double>& x, const SpectralModel& hd) {
    require_patient(x, hd.p());
    const std::size_t p = hd.p();
    std::vector<double> pi(p, 0.0);
    for (std::size_t k = 0; k < p; ++k) {
        double s = 0.0;
        for (std::size_t r = 0; r < p; ++r) s += x[r] * hd.eigen.vectors(r, k);
        pi[k] = s;
    }
    return pi;
}

ScoreProfile composite_score(const std::vector<double>& x, const SpectralModel& hd,
                             double sigma2, const std::string& patient_id) {
    if (sigma2 <= 0.0) throw InputError("composite_score: sigma2 must be positive");
    ScoreProfile prof;
    prof.patient_id = patient_id;
    prof.sigma2_used = sigma2;
    prof.projections = mode_scores(x, hd);

    const std::size_t p = hd.p();
    const double lam1 = hd.eigen.values[0];
    const double floor = kEigenvalueFloorRel * lam1;
    prof.weights.assign(p, std::numeric_limits<double>::quiet_NaN());

    for (std::size_t k = 0; k < p; ++k) {
        const double lam = hd.eigen.values[k];
        if (lam < floor || lam <= 0.0) {
            prof.excluded_modes.push_back(k);
            if (std::fabs(prof.projections[k]) > 1e-9) prof.truncated = true;
            continue;
        }
        const double w = 0.5 * (1.0 / sigma2 - 1.0 / lam);
        prof.weights[k] = w;
        prof.composite += w * prof.projections[k] * prof.projections[k];
        prof.constant += 0.5 * std::log(sigma2 / lam);
    }
    return prof;
}

double llr_oracle(const std::vector<double>& x, const SpectralModel& hd, double sigma2) {
    if (sigma2 <= 0.0) throw InputError("llr_oracle: sigma2 must be positive");
    require_patient(x, hd.p());
    const std::size_t p = hd.p();

    Matrix l;
    try {
        l = cholesky(hd.H);
    } catch (const NumericalError& e) {
        throw NumericalError(std::string("llr_oracle inapplicable: Hd is singular (") +
                             e.what() + ")");
    }
    // x^T Hd^-1 x = ||L^-1 x||^2, log det Hd = 2 sum log L_kk.
    std::vector<double> y = solve_lower(l, x);
    double quad = 0.0;
    for (double v : y) quad += v * v;
    double logdet = 0.0;
    for (std::size_t k = 0; k < p; ++k) logdet += std::log(l(k, k));
    logdet *= 2.0;

    double xx = 0.0;
    for (double v : x) xx += v * v;
    const double c = 0.5 * (static_cast<double>(p) * std::log(sigma2) - logdet);
    return -0.5 * quad + 0.5 * xx / sigma2 + c;
}

DiscriminantModes discriminant_modes(const SpectralModel& h0, const SpectralModel& hd,
                                     double ridge) {
    if (h0.p() != hd.p()) throw InputError("discriminant_modes: dimension mismatch");
    if (ridge < 0.0) throw InputError("discriminant_modes: ridge must be >= 0");

    SymMatrix h0r = h0.H;
    if (ridge > 0.0) {
        for (std::size_t i = 0; i < h0r.dim(); ++i) h0r.set(i, i, h0r(i, i) + ridge);
    }
    Matrix l;
    try {
        l = cholesky(h0r);
    } catch (const NumericalError&) {
        throw InputError(
            "discriminant_modes: H0 is not positive definite; regularization required "
            "(supply a ridge)");
    }

    // Whiten: M = L^-1 Hd L^-T, symmetric by construction up to round-off.
    Matrix m = solve_lower(l, hd.H.dense());
    m = solve_lower(l, m.transposed());
    SymMatrix ms(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            ms.set(i, j, 0.5 * (m(i, j) + m(j, i)));
    EigenSystem es = symmetric_eigendecompose(ms);

    DiscriminantModes dm;
    dm.values = es.values;
    dm.vectors = solve_lower_transposed(l, es.vectors);
    return dm;
}

}  // namespace specbio
