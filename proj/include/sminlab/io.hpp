#pragma once

#include "sminlab/alphaeta.hpp"
#include "sminlab/experiments.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace sminlab {

using Json = nlohmann::json;

enum class ResultFormat { csv, json };

/// Columns: t,trials,hits,p_hat,ci_low,ci_high,n,statistic,dist,shift,master_seed.
/// Reals are written with 17 significant digits.
void write_csv(std::ostream& os, const TailEstimate& estimate);
/// Throws std::runtime_error naming the path on I/O failure.
void emit_results(const TailEstimate& estimate, const std::filesystem::path& path, ResultFormat format);

Json to_json(const ExperimentConfig& config);
/// Accepts the shift and statistic either as objects or in their compact
/// string forms ("scaled_identity:10", "smin_scaled"). Missing optional
/// fields take the ExperimentConfig defaults; the result is validated.
ExperimentConfig config_from_json(const Json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

Json to_json(const TailEstimate& estimate);
TailEstimate tail_estimate_from_json(const Json& j);

/// {"factors", "psi_labels", "lambda_labels", "classes" ([i][atom]),
///  "event" (atom list), "event_partition" ([i][k] for the k-th event atom)}.
Json to_json(const AlphaEtaStructure& s);
AlphaEtaStructure structure_from_json(const Json& j);

std::string format_real(double x);

}  // namespace sminlab
