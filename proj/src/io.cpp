#include "specbio/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "specbio/errors.hpp"

namespace specbio {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
}

std::string file_digest(const std::string& path) {
    const std::string content = read_file(path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : content) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no, std::size_t col_no,
                  const std::string& col_name) {
    if (cell.empty()) {
        std::ostringstream os;
        os << "missing value at line " << line_no << ", column " << col_no << " (" << col_name
           << ")";
        throw InputError(os.str());
    }
    double v = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
        std::ostringstream os;
        os << "non-numeric cell \"" << cell << "\" at line " << line_no << ", column " << col_no
           << " (" << col_name << ")";
        throw InputError(os.str());
    }
    return v;
}

std::string format_double(double v) {
    // Shortest round-trip decimal: reloading reproduces the exact binary64.
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    const std::size_t rows = j.size();
    const std::size_t cols = rows > 0 ? j.at(0).size() : 0;
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t jj = 0; jj < cols; ++jj) m(i, jj) = j.at(i).at(jj).get<double>();
    return m;
}

}  // namespace

CohortMatrix read_cohort_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open cohort CSV: " + path);

    std::string line;
    if (!std::getline(in, line)) throw InputError("empty cohort CSV: " + path);
    std::vector<std::string> header = split_csv_line(line);
    if (header.empty() || header[0] != "patient_id")
        throw InputError("cohort CSV header must start with patient_id: " + path);
    std::vector<std::string> names(header.begin() + 1, header.end());
    if (names.empty()) throw InputError("cohort CSV has no biomarker columns: " + path);

    std::vector<std::string> ids;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != names.size() + 1) {
            std::ostringstream os;
            os << "line " << line_no << " has " << cells.size() << " cells, expected "
               << names.size() + 1;
            throw InputError(os.str());
        }
        ids.push_back(cells[0]);
        std::vector<double> row(names.size());
        for (std::size_t j = 0; j < names.size(); ++j)
            row[j] = parse_cell(cells[j + 1], line_no, j + 2, names[j]);
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) throw InputError("cohort CSV: n >= 2 required");

    Matrix raw(rows.size(), names.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < names.size(); ++j) raw(i, j) = rows[i][j];
    return center_columns(raw, names, ids);
}

void write_cohort_csv(const std::string& path, const CohortMatrix& cohort) {
    std::ostringstream os;
    os << "patient_id";
    for (const auto& n : cohort.biomarker_names) os << "," << n;
    os << "\n";
    for (std::size_t i = 0; i < cohort.n(); ++i) {
        os << (i < cohort.patient_ids.size() ? cohort.patient_ids[i]
                                             : "row-" + std::to_string(i + 1));
        for (std::size_t j = 0; j < cohort.p(); ++j) os << "," << format_double(cohort.data(i, j));
        os << "\n";
    }
    write_file(path, os.str());
}

nlohmann::json model_to_json(const SpectralModel& model, const BulkModel* bulk) {
    json j;
    j["schema_version"] = kModelSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["p"] = model.p();
    j["n"] = model.n_source;
    j["gamma"] = model.aspect_gamma;
    j["biomarker_names"] = model.biomarker_names;
    j["column_means"] = model.column_means;
    j["zero_variance_columns"] = model.zero_variance_columns;
    j["H"] = matrix_to_json(model.H.dense());
    j["eigenvalues"] = model.eigen.values;
    j["eigenvectors"] = matrix_to_json(model.eigen.vectors);
    if (bulk != nullptr) {
        j["bulk"] = {{"sigma2", bulk->sigma2},
                     {"gamma", bulk->gamma},
                     {"lower_edge", bulk->lower_edge},
                     {"upper_edge", bulk->upper_edge},
                     {"n_above_edge", bulk->n_above_edge},
                     {"iterations", bulk->iterations}};
    } else {
        j["bulk"] = nullptr;
    }
    return j;
}

SpectralModel model_from_json(const nlohmann::json& j, BulkModel* bulk_out) {
    if (!j.contains("schema_version") || j.at("schema_version") != kModelSchemaVersion)
        throw InputError("model JSON: unsupported or missing schema_version");
    SpectralModel model;
    model.H = SymMatrix::from_dense(matrix_from_json(j.at("H")));
    model.eigen.values = j.at("eigenvalues").get<std::vector<double>>();
    model.eigen.vectors = matrix_from_json(j.at("eigenvectors"));
    model.n_source = j.at("n").get<std::size_t>();
    model.aspect_gamma = j.at("gamma").get<double>();
    model.biomarker_names = j.at("biomarker_names").get<std::vector<std::string>>();
    model.column_means = j.at("column_means").get<std::vector<double>>();
    if (j.contains("zero_variance_columns") && !j.at("zero_variance_columns").is_null())
        model.zero_variance_columns = j.at("zero_variance_columns").get<std::vector<std::size_t>>();
    if (model.aspect_gamma <= 0.0)
        throw InputError("model JSON: gamma must be supplied and positive");
    if (bulk_out != nullptr && j.contains("bulk") && !j.at("bulk").is_null()) {
        const json& b = j.at("bulk");
        bulk_out->sigma2 = b.at("sigma2").get<double>();
        bulk_out->gamma = b.at("gamma").get<double>();
        bulk_out->lower_edge = b.at("lower_edge").get<double>();
        bulk_out->upper_edge = b.at("upper_edge").get<double>();
        bulk_out->n_above_edge = b.at("n_above_edge").get<std::size_t>();
        bulk_out->iterations = b.at("iterations").get<int>();
    }
    return model;
}

void save_model(const std::string& path, const SpectralModel& model, const BulkModel* bulk) {
    write_file(path, model_to_json(model, bulk).dump(2) + "\n");
}

SpectralModel load_model(const std::string& path, BulkModel* bulk_out) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw InputError("model JSON parse error in " + path + ": " + e.what());
    }
    return model_from_json(j, bulk_out);
}

namespace {

const char* dk_status_string(DkStatus s) {
    switch (s) {
        case DkStatus::certified: return "certified";
        case DkStatus::vacuous: return "vacuous";
        case DkStatus::inapplicable: return "inapplicable";
    }
    return "unknown";
}

}  // namespace

nlohmann::json perturbation_to_json(const PerturbationReport& rep) {
    json modes = json::array();
    for (const auto& m : rep.modes) {
        json rec = {{"mode", m.mode},
                    {"lambda0", m.lambda0},
                    {"lambdad", m.lambdad},
                    {"shift", m.shift},
                    {"angle", m.angle},
                    {"weyl_bound", m.weyl_bound},
                    {"dk_status", dk_status_string(m.dk_status)},
                    {"dk_extended", m.dk_extended},
                    {"crossing_suspected", m.crossing_suspected}};
        rec["dk_bound"] = m.dk_bound.has_value() ? json(*m.dk_bound) : json(nullptr);
        modes.push_back(std::move(rec));
    }
    return json{{"delta_norm", rep.delta_norm},
                {"phi", rep.phi},
                {"phi_bound", rep.phi_bound},
                {"eigengap0", rep.eigengap0},
                {"modes", std::move(modes)}};
}

nlohmann::json transfer_to_json(const TransferDiagnostics& diag) {
    json j{{"r", diag.r},
           {"principal_angles", diag.principal_angles},
           {"subspace_distance", diag.subspace_distance},
           {"leading_bound", diag.leading_bound},
           {"dk_vacuous", diag.dk_vacuous},
           {"verdict", to_string(diag.verdict)},
           {"reason", diag.reason}};
    j["dk_ratio"] = diag.dk_ratio.has_value() ? json(*diag.dk_ratio) : json(nullptr);
    return j;
}

nlohmann::json thermo_to_json(const ThermoProfile& prof) {
    return json{{"beta", prof.beta_grid},
                {"Z", prof.z_values},
                {"F", prof.f_values},
                {"lambda_min", prof.lambda_min},
                {"lambda_max", prof.lambda_max}};
}

nlohmann::json report_envelope(const std::string& command,
                               const std::vector<std::string>& argv_echo,
                               const nlohmann::json& config,
                               const std::vector<std::string>& input_paths,
                               const std::vector<std::uint64_t>& seeds,
                               const std::vector<std::string>& warnings,
                               nlohmann::json payload) {
    json inputs = json::array();
    for (const auto& p : input_paths)
        inputs.push_back(json{{"path", p}, {"digest", file_digest(p)}});
    return json{{"schema_version", kReportSchemaVersion},
                {"tool_version", kToolVersion},
                {"command", command},
                {"argv", argv_echo},
                {"config", config},
                {"inputs", std::move(inputs)},
                {"seeds", seeds},
                {"warnings", warnings},
                {"payload", std::move(payload)}};
}

}  // namespace specbio
