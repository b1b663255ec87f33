// Python bindings for the spectral biomarker core.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "specbio/cohort.hpp"
#include "specbio/errors.hpp"
#include "specbio/perturbation.hpp"
#include "specbio/prognostic.hpp"
#include "specbio/synth.hpp"
#include "specbio/thermo.hpp"
#include "specbio/transfer.hpp"
#include "specbio/unification.hpp"

namespace py = pybind11;
using namespace specbio;

namespace {

Matrix matrix_from_numpy(py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
    if (arr.ndim() != 2) throw InputError("expected a 2-D array");
    Matrix m(static_cast<std::size_t>(arr.shape(0)), static_cast<std::size_t>(arr.shape(1)));
    auto r = arr.unchecked<2>();
    for (py::ssize_t i = 0; i < arr.shape(0); ++i)
        for (py::ssize_t j = 0; j < arr.shape(1); ++j)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = r(i, j);
    return m;
}

py::array_t<double> matrix_to_numpy(const Matrix& m) {
    py::array_t<double> arr({m.rows(), m.cols()});
    auto w = arr.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            w(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = m(i, j);
    return arr;
}

std::vector<std::string> auto_names(std::size_t p) {
    std::vector<std::string> names(p);
    for (std::size_t j = 0; j < p; ++j) names[j] = "bm" + std::to_string(j + 1);
    return names;
}

CohortMatrix cohort_from_numpy(py::array_t<double> data,
                               std::optional<std::vector<std::string>> names) {
    Matrix raw = matrix_from_numpy(data);
    return center_columns(raw, names ? *names : auto_names(raw.cols()));
}

SpectralModel fit_from_numpy(py::array_t<double> data,
                             std::optional<std::vector<std::string>> names) {
    return build_hamiltonian(cohort_from_numpy(data, std::move(names)));
}

}  // namespace

PYBIND11_MODULE(_specbio, m) {
    m.doc() = "spectral biomarker framework: covariance Hamiltonians, perturbation "
              "certificates, prognostic scores, transfer gating";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<CertificateError>(m, "CertificateError", PyExc_AssertionError);

    py::class_<SpectralModel>(m, "SpectralModel")
        .def_property_readonly("H", [](const SpectralModel& s) {
            return matrix_to_numpy(s.H.dense());
        })
        .def_property_readonly("eigenvalues", [](const SpectralModel& s) { return s.eigen.values; })
        .def_property_readonly("eigenvectors", [](const SpectralModel& s) {
            return matrix_to_numpy(s.eigen.vectors);
        })
        .def_readonly("n_source", &SpectralModel::n_source)
        .def_readonly("aspect_gamma", &SpectralModel::aspect_gamma)
        .def_readonly("biomarker_names", &SpectralModel::biomarker_names);

    py::class_<BulkModel>(m, "BulkModel")
        .def_readonly("sigma2", &BulkModel::sigma2)
        .def_readonly("gamma", &BulkModel::gamma)
        .def_readonly("lower_edge", &BulkModel::lower_edge)
        .def_readonly("upper_edge", &BulkModel::upper_edge)
        .def_readonly("n_above_edge", &BulkModel::n_above_edge);

    m.def("eigh", [](py::array_t<double> a) {
        EigenSystem es = symmetric_eigendecompose(SymMatrix::from_dense(matrix_from_numpy(a)));
        return py::make_tuple(es.values, matrix_to_numpy(es.vectors));
    }, py::arg("a"), "Deterministic symmetric eigendecomposition (descending eigenvalues).");

    m.def("fit", &fit_from_numpy, py::arg("data"), py::arg("names") = std::nullopt,
          "Center columns and build the cohort Hamiltonian with its spectrum.");

    m.def("mp_support", &mp_support, py::arg("sigma2"), py::arg("gamma"));
    m.def("bbp_detectable", &bbp_detectable, py::arg("theta"), py::arg("gamma"));
    m.def("estimate_bulk", &estimate_bulk, py::arg("model"));

    m.def("fingerprint", [](const SpectralModel& h0, const SpectralModel& hd) {
        PerturbationReport rep = fingerprint(h0, hd);
        py::dict d;
        d["delta_norm"] = rep.delta_norm;
        d["phi"] = rep.phi;
        d["eigengap0"] = rep.eigengap0;
        std::vector<double> shifts, angles;
        for (const auto& mode : rep.modes) {
            shifts.push_back(mode.shift);
            angles.push_back(mode.angle);
        }
        d["shifts"] = shifts;
        d["angles"] = angles;
        return d;
    }, py::arg("h0"), py::arg("hd"));

    m.def("disruption_index", &disruption_index, py::arg("h0"), py::arg("hd"));

    m.def("composite_score", [](std::vector<double> x, const SpectralModel& hd, double sigma2) {
        return composite_score(x, hd, sigma2).composite;
    }, py::arg("x"), py::arg("hd"), py::arg("sigma2"));
    m.def("llr_oracle", &llr_oracle, py::arg("x"), py::arg("hd"), py::arg("sigma2"));
    m.def("mode_scores", &mode_scores, py::arg("x"), py::arg("hd"));

    m.def("principal_angles", [](py::array_t<double> qs, py::array_t<double> qt) {
        return principal_angles(matrix_from_numpy(qs), matrix_from_numpy(qt));
    }, py::arg("qs"), py::arg("qt"));
    m.def("subspace_distance", &subspace_distance, py::arg("angles"));
    m.def("transfer_bound", &transfer_bound, py::arg("m"), py::arg("theta1"));
    m.def("transfer_verdict", [](const SpectralModel& hs, const SpectralModel& ht, std::size_t r) {
        TransferDiagnostics diag = transfer_verdict(hs, ht, r);
        py::dict d;
        d["principal_angles"] = diag.principal_angles;
        d["subspace_distance"] = diag.subspace_distance;
        d["leading_bound"] = diag.leading_bound;
        d["verdict"] = std::string(to_string(diag.verdict));
        d["reason"] = diag.reason;
        if (diag.dk_ratio) d["dk_ratio"] = *diag.dk_ratio; else d["dk_ratio"] = py::none();
        return d;
    }, py::arg("hs"), py::arg("ht"), py::arg("r") = 1);

    m.def("partition_function", &partition_function, py::arg("model"), py::arg("beta"));
    m.def("free_energy", [](const SpectralModel& model, std::vector<double> grid) {
        ThermoProfile prof = free_energy(model, grid);
        return py::make_tuple(prof.z_values, prof.f_values);
    }, py::arg("model"), py::arg("beta_grid"));

    m.def("gaussian_cohort", [](py::array_t<double> sigma, std::size_t n, std::uint64_t seed) {
        CohortMatrix c = gaussian_cohort(
            SymMatrix::from_dense(matrix_from_numpy(sigma)), n, seed);
        return matrix_to_numpy(c.data);
    }, py::arg("sigma"), py::arg("n"), py::arg("seed"));

    m.def("regime_covariance", [](const std::string& regime, std::size_t p) {
        RegimeSpec spec;
        spec.regime = regime_from_string(regime);
        spec.p = p;
        return matrix_to_numpy(regime_covariance(spec).sigma.dense());
    }, py::arg("regime"), py::arg("p") = 36);

    m.def("spiked_ensemble", [](std::vector<double> thetas, double gamma, double sigma2,
                                std::size_t n, std::uint64_t seed) {
        return matrix_to_numpy(spiked_ensemble(thetas, gamma, sigma2, n, seed).data);
    }, py::arg("thetas"), py::arg("gamma"), py::arg("sigma2") = 1.0, py::arg("n") = 500,
       py::arg("seed") = 0);

    m.def("two_group_demo", [](double divergence, std::uint64_t seed) {
        TwoGroupSpec spec;
        spec.divergence = divergence;
        spec.seed = seed;
        TwoGroupCohort demo = two_group_demo(spec);
        return py::make_tuple(matrix_to_numpy(demo.cohort.data), demo.labels,
                              eigenplane_auc(demo));
    }, py::arg("divergence") = 0.4, py::arg("seed") = 0);

    m.def("pca_modes", [](py::array_t<double> data, std::size_t r) {
        PcaResult res = pca_modes(cohort_from_numpy(data, std::nullopt), r);
        return py::make_tuple(res.eigenvalues, matrix_to_numpy(res.modes));
    }, py::arg("data"), py::arg("r"));

    m.def("lda_direction", [](py::array_t<double> healthy, py::array_t<double> disease,
                              double ridge) {
        LdaResult res = lda_direction(cohort_from_numpy(healthy, std::nullopt),
                                      cohort_from_numpy(disease, std::nullopt), ridge);
        if (!res.has_direction) return py::object(py::none());
        return py::object(py::cast(res.direction));
    }, py::arg("healthy"), py::arg("disease"), py::arg("ridge") = 0.0);

    m.def("cca_modes", [](py::array_t<double> x, py::array_t<double> y, std::size_t r,
                          double ridge) {
        CcaResult res = cca_modes(cohort_from_numpy(x, std::nullopt),
                                  cohort_from_numpy(y, std::nullopt), r, ridge);
        return py::make_tuple(res.correlations, matrix_to_numpy(res.x_directions),
                              matrix_to_numpy(res.y_directions));
    }, py::arg("x"), py::arg("y"), py::arg("r") = 1, py::arg("ridge") = 0.0);
}
