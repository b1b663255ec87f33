#include "specbio/unification.hpp"

#include <cmath>

#include "specbio/errors.hpp"
#include "specbio/prognostic.hpp"

namespace specbio {

namespace {

struct ClassStats {
    std::vector<double> mean;
    SymMatrix h{1};  // per-class covariance of centered data
    std::size_t n = 0;
};

ClassStats class_stats(const CohortMatrix& raw) {
    CohortMatrix centered = raw.centered
                                ? raw
                                : center_columns(raw.data, raw.biomarker_names, raw.patient_ids);
    ClassStats st;
    st.n = centered.n();
    st.mean = centered.column_means.empty() ? std::vector<double>(centered.p(), 0.0)
                                            : centered.column_means;
    st.h = build_hamiltonian(centered).H;
    return st;
}

SymMatrix add_ridge(const SymMatrix& a, double ridge) {
    SymMatrix r = a;
    if (ridge > 0.0)
        for (std::size_t i = 0; i < r.dim(); ++i) r.set(i, i, r(i, i) + ridge);
    return r;
}

}  // namespace

PcaResult pca_modes(const CohortMatrix& cohort, std::size_t r) {
    CohortMatrix centered = cohort.centered
                                ? cohort
                                : center_columns(cohort.data, cohort.biomarker_names,
                                                 cohort.patient_ids);
    if (r < 1 || r > centered.p()) throw InputError("pca_modes: r out of range");
    SpectralModel model = build_hamiltonian(centered);

    PcaResult out;
    out.eigenvalues.assign(model.eigen.values.begin(), model.eigen.values.begin() + r);
    out.modes = Matrix(centered.p(), r);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t i = 0; i < centered.p(); ++i)
            out.modes(i, k) = model.eigen.vectors(i, k);
    return out;
}

ScatterPair scatter_pair(const CohortMatrix& healthy_raw, const CohortMatrix& disease_raw) {
    if (healthy_raw.p() != disease_raw.p())
        throw InputError("scatter_pair: biomarker dimensions differ");
    if (healthy_raw.biomarker_names != disease_raw.biomarker_names)
        throw InputError("scatter_pair: biomarker names differ");

    ClassStats s0 = class_stats(healthy_raw);
    ClassStats sd = class_stats(disease_raw);
    const std::size_t p = healthy_raw.p();
    const double n = static_cast<double>(s0.n + sd.n);
    const double w0 = static_cast<double>(s0.n) / n;
    const double wd = static_cast<double>(sd.n) / n;

    ScatterPair pair;
    pair.n0 = s0.n;
    pair.nd = sd.n;
    pair.mu0 = s0.mean;
    pair.mud = sd.mean;
    pair.between = SymMatrix(p);
    const double coef = static_cast<double>(s0.n) * static_cast<double>(sd.n) / n;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i; j < p; ++j)
            pair.between.set(i, j, coef * (sd.mean[i] - s0.mean[i]) * (sd.mean[j] - s0.mean[j]));
    pair.within = w0 * s0.h + wd * sd.h;
    return pair;
}

LdaResult lda_direction(const CohortMatrix& healthy_raw, const CohortMatrix& disease_raw,
                        double ridge) {
    ScatterPair pair = scatter_pair(healthy_raw, disease_raw);
    const std::size_t p = pair.mu0.size();

    double diff_norm = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        const double d = pair.mud[i] - pair.mu0[i];
        diff_norm += d * d;
    }
    LdaResult out;
    if (std::sqrt(diff_norm) <= 1e-12) {
        out.has_direction = false;  // identical class means: no discriminant direction
        return out;
    }

    Matrix l;
    try {
        l = cholesky(add_ridge(pair.within, ridge));
    } catch (const NumericalError&) {
        throw InputError("lda_direction: within-class scatter is degenerate; a ridge is required");
    }
    Matrix m = solve_lower(l, pair.between.dense());
    m = solve_lower(l, m.transposed());
    SymMatrix ms(p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i; j < p; ++j) ms.set(i, j, 0.5 * (m(i, j) + m(j, i)));
    EigenSystem es = symmetric_eigendecompose(ms);

    std::vector<double> w(p);
    for (std::size_t i = 0; i < p; ++i) w[i] = es.vectors(i, 0);
    std::vector<double> v = solve_lower_transposed(l, w);
    double nrm = 0.0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    out.has_direction = true;
    out.generalized_eigenvalue = es.values[0];
    out.direction.resize(p);
    for (std::size_t i = 0; i < p; ++i) out.direction[i] = v[i] / nrm;
    return out;
}

CcaResult cca_modes(const CohortMatrix& x, const CohortMatrix& y, std::size_t r, double ridge) {
    if (x.n() != y.n()) throw InputError("cca_modes: views must share the patient count");
    CohortMatrix xc = x.centered ? x : center_columns(x.data, x.biomarker_names, x.patient_ids);
    CohortMatrix yc = y.centered ? y : center_columns(y.data, y.biomarker_names, y.patient_ids);
    const std::size_t p1 = xc.p(), p2 = yc.p(), n = xc.n();
    if (r < 1 || r > std::min(p1, p2)) throw InputError("cca_modes: r out of range");

    SymMatrix hxx = build_hamiltonian(xc).H;
    SymMatrix hyy = build_hamiltonian(yc).H;
    Matrix hxy(p1, p2);
    for (std::size_t i = 0; i < p1; ++i)
        for (std::size_t j = 0; j < p2; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += xc.data(k, i) * yc.data(k, j);
            hxy(i, j) = s / static_cast<double>(n);
        }

    Matrix lx, ly;
    try {
        lx = cholesky(add_ridge(hxx, ridge));
    } catch (const NumericalError&) {
        throw InputError("cca_modes: X block covariance is rank deficient; a ridge is required");
    }
    try {
        ly = cholesky(add_ridge(hyy, ridge));
    } catch (const NumericalError&) {
        throw InputError("cca_modes: Y block covariance is rank deficient; a ridge is required");
    }

    // Whitened cross-covariance C = Lx^-1 Hxy Ly^-T; its singular values are
    // the canonical correlations.
    Matrix c = solve_lower(lx, hxy);                 // p1 x p2
    c = solve_lower(ly, c.transposed()).transposed();  // apply Ly^-1 on the right

    const bool flipped = c.cols() > c.rows();
    Svd svd = small_svd(flipped ? c.transposed() : c);
    const Matrix& a = flipped ? svd.right : svd.left;   // p1 x r'
    const Matrix& b = flipped ? svd.left : svd.right;   // p2 x r'

    CcaResult out;
    out.correlations.resize(r);
    out.x_directions = Matrix(p1, r);
    out.y_directions = Matrix(p2, r);
    for (std::size_t k = 0; k < r; ++k) {
        out.correlations[k] = std::clamp(svd.singular_values[k], 0.0, 1.0);
        std::vector<double> ak(p1), bk(p2);
        for (std::size_t i = 0; i < p1; ++i) ak[i] = a(i, k);
        for (std::size_t i = 0; i < p2; ++i) bk[i] = b(i, k);
        out.x_directions.set_column(k, solve_lower_transposed(lx, ak));
        out.y_directions.set_column(k, solve_lower_transposed(ly, bk));
    }
    return out;
}

}  // namespace specbio
