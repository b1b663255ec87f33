#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "specbio/cohort.hpp"
#include "specbio/perturbation.hpp"
#include "specbio/prognostic.hpp"
#include "specbio/thermo.hpp"
#include "specbio/transfer.hpp"

namespace specbio {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchemaVersion = "specbio-report/1";
inline constexpr const char* kModelSchemaVersion = "specbio-model/1";

/// Cohort CSV: header `patient_id,<name1>,...,<nameP>`, one row per patient,
/// decimal point only, no missing cells.
CohortMatrix read_cohort_csv(const std::string& path);
void write_cohort_csv(const std::string& path, const CohortMatrix& cohort);

nlohmann::json model_to_json(const SpectralModel& model, const BulkModel* bulk);
SpectralModel model_from_json(const nlohmann::json& j, BulkModel* bulk_out = nullptr);
void save_model(const std::string& path, const SpectralModel& model, const BulkModel* bulk);
SpectralModel load_model(const std::string& path, BulkModel* bulk_out = nullptr);

nlohmann::json perturbation_to_json(const PerturbationReport& rep);
nlohmann::json transfer_to_json(const TransferDiagnostics& diag);
nlohmann::json thermo_to_json(const ThermoProfile& prof);

/// Self-describing report wrapper: versions, the resolved command/config,
/// input digests, seeds, warnings, then the payload.
nlohmann::json report_envelope(const std::string& command,
                               const std::vector<std::string>& argv_echo,
                               const nlohmann::json& config,
                               const std::vector<std::string>& input_paths,
                               const std::vector<std::uint64_t>& seeds,
                               const std::vector<std::string>& warnings,
                               nlohmann::json payload);

/// FNV-1a 64-bit content hash, hex-encoded with an algorithm prefix.
std::string file_digest(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace specbio
