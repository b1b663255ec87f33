// specbio: spectral biomarker analysis command line.
//
// Exit codes: 0 success, 2 input/validation error, 3 numerical error,
// 4 internal certificate violation (a bug signal, never a data signal).

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specbio/errors.hpp"
#include "specbio/io.hpp"
#include "specbio/synth.hpp"
#include "specbio/unification.hpp"

using nlohmann::json;
using namespace specbio;

namespace {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

// Defaults resolvable via --config / SPECBIO_CONFIG and echoed in reports.
json default_config() {
    return json{{"transfer",
                 {{"dk_ratio_well", 0.2},
                  {"theta1_well_deg", 10.0},
                  {"theta1_ill_deg", 45.0},
                  {"dk_ratio_ill", 1.0}}},
                {"eigenvalue_floor_rel", kEigenvalueFloorRel},
                {"ridge", 0.0},
                {"thermo", {{"points", 64}, {"span_low", 1e-2}, {"span_high", 1e2}}},
                {"score_topk", 3}};
}

json load_config(const std::string& cli_path) {
    json cfg = default_config();
    std::string path = cli_path;
    if (path.empty()) {
        if (const char* env = std::getenv("SPECBIO_CONFIG")) path = env;
    }
    if (!path.empty()) {
        json user;
        try {
            user = json::parse(read_file(path));
        } catch (const json::exception& e) {
            throw InputError("config parse error in " + path + ": " + e.what());
        }
        cfg.merge_patch(user);
    }
    return cfg;
}

TransferPolicy policy_from_config(const json& cfg) {
    TransferPolicy pol;
    const json& t = cfg.at("transfer");
    pol.dk_ratio_well = t.at("dk_ratio_well").get<double>();
    pol.theta1_well_rad = t.at("theta1_well_deg").get<double>() * 3.14159265358979323846 / 180.0;
    pol.theta1_ill_rad = t.at("theta1_ill_deg").get<double>() * 3.14159265358979323846 / 180.0;
    pol.dk_ratio_ill = t.at("dk_ratio_ill").get<double>();
    return pol;
}

std::vector<std::string> echo_argv(int argc, char** argv) {
    std::vector<std::string> v;
    for (int i = 0; i < argc; ++i) v.emplace_back(argv[i]);
    return v;
}

void emit(const std::string& out_path, const json& doc) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty() || out_path == "-")
        std::cout << text;
    else
        write_file(out_path, text);
}

struct CliState {
    std::string config_path;
    std::vector<std::string> argv;
};

void cmd_fit(const CliState& st, const std::string& cohort_path, const std::string& out_path) {
    CohortMatrix cohort = read_cohort_csv(cohort_path);
    SpectralModel model = build_hamiltonian(cohort);
    std::optional<BulkModel> bulk;
    std::vector<std::string> warnings;
    try {
        bulk = estimate_bulk(model);
    } catch (const std::exception& e) {
        warnings.push_back(std::string("bulk estimate unavailable: ") + e.what());
    }
    for (std::size_t j : model.zero_variance_columns)
        warnings.push_back("zero-variance biomarker retained: " + model.biomarker_names[j]);
    save_model(out_path, model, bulk ? &*bulk : nullptr);
    json cfg = load_config(st.config_path);
    json payload = {{"model_file", out_path},
                    {"p", model.p()},
                    {"n", model.n_source},
                    {"gamma", model.aspect_gamma},
                    {"lambda1", model.eigen.values[0]}};
    emit("-", report_envelope("fit", st.argv, cfg, {cohort_path}, {}, warnings, payload));
}

void write_mode_csv(const std::string& path, const PerturbationReport& rep) {
    std::ostringstream os;
    os << "mode,lambda0,lambdad,shift,angle,weyl_bound,dk_bound,dk_status,crossing\n";
    for (const auto& m : rep.modes) {
        os << m.mode << "," << format_double(m.lambda0) << "," << format_double(m.lambdad) << ","
           << format_double(m.shift) << "," << format_double(m.angle) << ","
           << format_double(m.weyl_bound) << ",";
        if (m.dk_bound)
            os << format_double(*m.dk_bound);
        os << ",";
        switch (m.dk_status) {
            case DkStatus::certified: os << (m.dk_extended ? "extended" : "certified"); break;
            case DkStatus::vacuous: os << "vacuous"; break;
            case DkStatus::inapplicable: os << "inapplicable"; break;
        }
        os << "," << (m.crossing_suspected ? 1 : 0) << "\n";
    }
    write_file(path, os.str());
}

void cmd_perturb(const CliState& st, const std::string& m0_path, const std::string& md_path,
                 const std::string& out_path, const std::string& csv_path) {
    SpectralModel h0 = load_model(m0_path);
    SpectralModel hd = load_model(md_path);
    PerturbationReport rep = fingerprint(h0, hd);
    if (!csv_path.empty()) write_mode_csv(csv_path, rep);
    json cfg = load_config(st.config_path);
    emit(out_path, report_envelope("perturb", st.argv, cfg, {m0_path, md_path}, {}, {},
                                   perturbation_to_json(rep)));
}

void cmd_score(const CliState& st, const std::string& model_path, const std::string& patients_path,
               const std::string& sigma2_arg, bool oracle, double ridge, std::size_t topk,
               const std::string& out_path, const std::string& json_path) {
    BulkModel bulk;
    bulk.sigma2 = -1.0;
    SpectralModel hd = load_model(model_path, &bulk);
    CohortMatrix patients = read_cohort_csv(patients_path);
    if (patients.biomarker_names != hd.biomarker_names)
        throw InputError("score: patient biomarker columns do not match the model");

    double sigma2;
    if (sigma2_arg == "auto") {
        if (bulk.sigma2 <= 0.0)
            throw InputError("score: --sigma2 auto requires a bulk estimate in the model file");
        sigma2 = bulk.sigma2;
    } else {
        sigma2 = std::stod(sigma2_arg);
    }
    if (sigma2 <= 0.0) throw InputError("score: sigma2 must be positive");
    (void)ridge;

    json cfg = load_config(st.config_path);
    std::vector<std::string> warnings;

    // Patients are re-centered with the model's stored column means.
    std::ostringstream csv;
    csv << "patient_id,Pi,C";
    for (std::size_t k = 0; k < topk; ++k) csv << ",proj" << (k + 1);
    csv << "\n";

    std::vector<ScoreProfile> profiles;
    double max_dev = 0.0;
    std::vector<double> diffs;
    for (std::size_t i = 0; i < patients.n(); ++i) {
        std::vector<double> x(patients.p());
        for (std::size_t j = 0; j < patients.p(); ++j) {
            const double raw = patients.data(i, j) + patients.column_means[j];
            x[j] = raw - hd.column_means[j];
        }
        ScoreProfile prof = composite_score(x, hd, sigma2, patients.patient_ids[i]);
        if (prof.truncated)
            warnings.push_back("patient " + prof.patient_id +
                               ": projection on rank-deficient modes truncated");
        if (oracle) diffs.push_back(llr_oracle(x, hd, sigma2) - prof.composite);
        csv << prof.patient_id << "," << format_double(prof.composite) << ","
            << format_double(prof.constant);
        for (std::size_t k = 0; k < topk; ++k)
            csv << ","
                << (k < prof.projections.size() ? format_double(prof.projections[k]) : "");
        csv << "\n";
        profiles.push_back(std::move(prof));
    }
    if (oracle && !diffs.empty()) {
        double mean = 0.0;
        for (double d : diffs) mean += d;
        mean /= static_cast<double>(diffs.size());
        for (double d : diffs) max_dev = std::max(max_dev, std::fabs(d - mean));
        if (max_dev > 1e-8) {
            std::ostringstream os;
            os << "score oracle: Pi - llr is not constant across patients (spread " << max_dev
               << ")";
            throw CertificateError(os.str());
        }
    }
    write_file(out_path, csv.str());

    json summary = {{"sigma2", sigma2},
                    {"ridge", ridge},
                    {"excluded_modes", profiles.empty() ? std::vector<std::size_t>{}
                                                        : profiles[0].excluded_modes},
                    {"n_patients", patients.n()},
                    {"scores_file", out_path}};
    if (!profiles.empty()) {
        json w = json::array();
        for (double wk : profiles[0].weights)
            w.push_back(std::isfinite(wk) ? json(wk) : json(nullptr));
        summary["weights"] = std::move(w);
        summary["constant_C"] = profiles[0].constant;
    }
    if (oracle) summary["oracle_max_deviation"] = max_dev;
    json envelope = report_envelope("score", st.argv, cfg, {model_path, patients_path}, {},
                                    warnings, summary);
    if (!json_path.empty())
        emit(json_path, envelope);
    else
        emit("-", envelope);
}

void cmd_transfer(const CliState& st, const std::string& ms_path, const std::string& mt_path,
                  std::size_t r, const std::string& out_path) {
    SpectralModel hs = load_model(ms_path);
    SpectralModel ht = load_model(mt_path);
    json cfg = load_config(st.config_path);
    TransferDiagnostics diag = transfer_verdict(hs, ht, r, policy_from_config(cfg));
    emit(out_path, report_envelope("transfer", st.argv, cfg, {ms_path, mt_path}, {}, {},
                                   transfer_to_json(diag)));
}

void cmd_thermo(const CliState& st, const std::string& model_path, const std::string& grid_arg,
                const std::string& out_path, const std::string& json_path) {
    SpectralModel model = load_model(model_path);
    json cfg = load_config(st.config_path);

    std::vector<double> grid;
    if (grid_arg.empty()) {
        grid = default_beta_grid(model, cfg.at("thermo").at("points").get<std::size_t>());
    } else {
        // --grid min,max,count (log-spaced)
        double lo, hi;
        std::size_t count;
        char c1, c2;
        std::istringstream is(grid_arg);
        if (!(is >> lo >> c1 >> hi >> c2 >> count) || c1 != ',' || c2 != ',')
            throw InputError("thermo: --grid expects min,max,count");
        if (lo <= 0.0 || hi <= lo || count < 2) throw InputError("thermo: invalid grid spec");
        grid.resize(count);
        const double step = std::log(hi / lo) / static_cast<double>(count - 1);
        for (std::size_t i = 0; i < count; ++i)
            grid[i] = lo * std::exp(step * static_cast<double>(i));
    }
    ThermoProfile prof = free_energy(model, grid);

    std::ostringstream csv;
    csv << "beta,Z,F\n";
    for (std::size_t i = 0; i < prof.beta_grid.size(); ++i)
        csv << format_double(prof.beta_grid[i]) << "," << format_double(prof.z_values[i]) << ","
            << format_double(prof.f_values[i]) << "\n";
    write_file(out_path, csv.str());

    if (!json_path.empty())
        emit(json_path, report_envelope("thermo", st.argv, cfg, {model_path}, {}, {},
                                        thermo_to_json(prof)));
}

void cmd_synth(const CliState& st, const std::string& regime_name, const std::string& spiked_arg,
               bool two_group, double gamma, double sigma2, std::size_t n, std::uint64_t seed,
               double divergence, const std::string& out_path) {
    json cfg = load_config(st.config_path);
    json sidecar;
    CohortMatrix cohort;

    if (!regime_name.empty()) {
        RegimeSpec spec;
        spec.regime = regime_from_string(regime_name);
        spec.n = n;
        spec.seed = seed;
        RegimeCovariance cov = regime_covariance(spec);
        cohort = gaussian_cohort(cov.sigma, spec.n, spec.seed);
        sidecar = {{"kind", "regime"},
                   {"regime", regime_name},
                   {"p", spec.p},
                   {"n", spec.n},
                   {"seed", seed},
                   {"strength_used", cov.strength_used},
                   {"ridge_applied", cov.ridge_applied}};
        if (spec.p <= 64) {
            json rows = json::array();
            for (std::size_t i = 0; i < spec.p; ++i) {
                json row = json::array();
                for (std::size_t j = 0; j < spec.p; ++j) row.push_back(cov.sigma(i, j));
                rows.push_back(std::move(row));
            }
            sidecar["population_covariance"] = std::move(rows);
        }
    } else if (!spiked_arg.empty()) {
        std::vector<double> thetas;
        if (spiked_arg != "none") {
            std::istringstream is(spiked_arg);
            std::string tok;
            while (std::getline(is, tok, ',')) thetas.push_back(std::stod(tok));
        }
        cohort = spiked_ensemble(thetas, gamma, sigma2, n, seed);
        sidecar = {{"kind", "spiked"}, {"thetas", thetas},   {"gamma", gamma},
                   {"sigma2", sigma2}, {"n", n},             {"p", cohort.p()},
                   {"seed", seed}};
    } else if (two_group) {
        TwoGroupSpec spec;
        spec.seed = seed;
        spec.divergence = divergence;
        TwoGroupCohort demo = two_group_demo(spec);
        cohort = demo.cohort;
        sidecar = {{"kind", "two_group"},
                   {"p", spec.p},
                   {"n_progressive", spec.n_progressive},
                   {"n_stable", spec.n_stable},
                   {"timepoints", spec.timepoints},
                   {"divergence", spec.divergence},
                   {"noise_sd", spec.noise_sd},
                   {"seed", seed},
                   {"labels", demo.labels},
                   {"eigenplane_auc", eigenplane_auc(demo)}};
    } else {
        throw InputError("synth: one of --regime, --spiked, --two-group is required");
    }

    write_cohort_csv(out_path, cohort);
    json envelope = report_envelope("synth", st.argv, cfg, {}, {seed}, {}, sidecar);
    emit(out_path + ".json", envelope);
}

void cmd_reduce(const CliState& st, const std::string& method, const std::string& a_path,
                const std::string& b_path, std::size_t r, double ridge,
                const std::string& out_path) {
    json cfg = load_config(st.config_path);
    json payload;
    std::vector<std::string> inputs{a_path};

    if (method == "pca") {
        CohortMatrix cohort = read_cohort_csv(a_path);
        PcaResult res = pca_modes(cohort, r == 0 ? cohort.p() : r);
        json modes = json::array();
        for (std::size_t k = 0; k < res.eigenvalues.size(); ++k) {
            json col = json::array();
            for (std::size_t i = 0; i < res.modes.rows(); ++i) col.push_back(res.modes(i, k));
            modes.push_back(std::move(col));
        }
        payload = {{"method", "pca"}, {"eigenvalues", res.eigenvalues}, {"modes", modes}};
    } else if (method == "lda") {
        if (b_path.empty()) throw InputError("reduce lda: two cohort CSVs required");
        inputs.push_back(b_path);
        LdaResult res =
            lda_direction(read_cohort_csv(a_path), read_cohort_csv(b_path), ridge);
        payload = {{"method", "lda"},
                   {"has_direction", res.has_direction},
                   {"ridge", ridge}};
        if (res.has_direction) {
            payload["direction"] = res.direction;
            payload["generalized_eigenvalue"] = res.generalized_eigenvalue;
        }
    } else if (method == "cca") {
        if (b_path.empty()) throw InputError("reduce cca: two cohort CSVs required");
        inputs.push_back(b_path);
        CohortMatrix x = read_cohort_csv(a_path);
        CohortMatrix y = read_cohort_csv(b_path);
        CcaResult res = cca_modes(x, y, r == 0 ? 1 : r, ridge);
        json u = json::array(), v = json::array();
        for (std::size_t k = 0; k < res.correlations.size(); ++k) {
            json uc = json::array(), vc = json::array();
            for (std::size_t i = 0; i < x.p(); ++i) uc.push_back(res.x_directions(i, k));
            for (std::size_t i = 0; i < y.p(); ++i) vc.push_back(res.y_directions(i, k));
            u.push_back(std::move(uc));
            v.push_back(std::move(vc));
        }
        payload = {{"method", "cca"},
                   {"correlations", res.correlations},
                   {"x_directions", u},
                   {"y_directions", v},
                   {"ridge", ridge}};
    } else {
        throw InputError("reduce: method must be pca, lda, or cca");
    }
    emit(out_path, report_envelope("reduce", st.argv, cfg, inputs, {}, {}, payload));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral biomarker analysis"};
    app.require_subcommand(1);

    CliState st;
    st.argv = echo_argv(argc, argv);
    app.add_option("--config", st.config_path, "JSON config overriding built-in defaults");

    // fit
    std::string cohort_path, out_path = "-", csv_path;
    auto* fit = app.add_subcommand("fit", "build a spectral model from a cohort CSV");
    fit->add_option("cohort", cohort_path, "cohort CSV")->required();
    fit->add_option("--out", out_path, "model JSON output")->required();

    // perturb
    std::string m0_path, md_path;
    auto* perturb = app.add_subcommand("perturb", "spectral fingerprint of Hd against H0");
    perturb->add_option("model0", m0_path)->required();
    perturb->add_option("modeld", md_path)->required();
    perturb->add_option("--out", out_path, "report JSON (default stdout)");
    perturb->add_option("--csv", csv_path, "per-mode plot-ready CSV");

    // score
    std::string patients_path, sigma2_arg = "auto", json_path;
    bool oracle = false;
    double ridge = 0.0, divergence = 0.4;
    std::size_t topk = 3, rank = 1;
    auto* score = app.add_subcommand("score", "spectral prognostic scores for patients");
    score->add_option("modeld", md_path)->required();
    score->add_option("patients", patients_path)->required();
    score->add_option("--sigma2", sigma2_arg, "healthy variance, or 'auto' for the bulk estimate");
    score->add_flag("--oracle", oracle, "also run the log-likelihood-ratio oracle");
    score->add_option("--ridge", ridge, "ridge added before whitening-based operations");
    score->add_option("--topk", topk, "projections per patient in the CSV");
    score->add_option("--out", out_path, "score CSV output")->required();
    score->add_option("--json", json_path, "summary JSON (default stdout)");

    // transfer
    auto* transfer = app.add_subcommand("transfer", "gate a source->target basis transfer");
    transfer->add_option("models", m0_path)->required();
    transfer->add_option("modelt", md_path)->required();
    transfer->add_option("--r", rank, "subspace rank to compare");
    transfer->add_option("--out", out_path, "report JSON (default stdout)");

    // thermo
    std::string grid_arg;
    auto* thermo = app.add_subcommand("thermo", "partition function and free energy curve");
    thermo->add_option("model", m0_path)->required();
    thermo->add_option("--grid", grid_arg, "beta grid as min,max,count (log-spaced)");
    thermo->add_option("--out", out_path, "curve CSV output")->required();
    thermo->add_option("--json", json_path, "profile JSON");

    // synth
    std::string regime_name, spiked_arg;
    bool two_group = false;
    double gamma = 0.1, sigma2_val = 1.0;
    std::size_t n = 500;
    std::uint64_t seed = 0;
    auto* synth = app.add_subcommand("synth", "seeded synthetic cohorts");
    synth->add_option("--regime", regime_name,
                      "no_interdependency|healthy_coordination|gain_of_coordination|"
                      "loss_of_coordination");
    synth->add_option("--spiked", spiked_arg, "comma-separated spike strengths, or 'none'");
    synth->add_flag("--two-group", two_group, "two-group trajectory demonstration");
    synth->add_option("--gamma", gamma, "aspect ratio p/n for --spiked");
    synth->add_option("--sigma2", sigma2_val, "noise variance for --spiked");
    synth->add_option("--n", n, "cohort size");
    synth->add_option("--seed", seed, "PRNG seed");
    synth->add_option("--divergence", divergence, "drift rate for --two-group");
    synth->add_option("--out", out_path, "cohort CSV output (JSON sidecar alongside)")->required();

    // reduce
    std::string method, a_path, b_path;
    auto* reduce = app.add_subcommand("reduce", "PCA/LDA/CCA reductions");
    reduce->add_option("--method", method, "pca|lda|cca")->required();
    reduce->add_option("input", a_path, "cohort CSV")->required();
    reduce->add_option("input2", b_path, "second cohort CSV (lda, cca)");
    reduce->add_option("--r", rank, "modes to extract");
    reduce->add_option("--ridge", ridge, "ridge for degenerate blocks");
    reduce->add_option("--out", out_path, "report JSON (default stdout)");

    try {
        app.parse(argc, argv);
        if (fit->parsed()) cmd_fit(st, cohort_path, out_path);
        else if (perturb->parsed()) cmd_perturb(st, m0_path, md_path, out_path, csv_path);
        else if (score->parsed())
            cmd_score(st, md_path, patients_path, sigma2_arg, oracle, ridge, topk, out_path,
                      json_path);
        else if (transfer->parsed()) cmd_transfer(st, m0_path, md_path, rank, out_path);
        else if (thermo->parsed()) cmd_thermo(st, m0_path, grid_arg, out_path, json_path);
        else if (synth->parsed())
            cmd_synth(st, regime_name, spiked_arg, two_group, gamma, sigma2_val, n, seed,
                      divergence, out_path);
        else if (reduce->parsed()) cmd_reduce(st, method, a_path, b_path, rank, ridge, out_path);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const CertificateError& e) {
        std::cerr << "certificate violation (internal): " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
