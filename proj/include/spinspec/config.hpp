// Experiment configuration: strict JSON parsing (unknown keys rejected, every
// error named by field path), dot-path overrides, and a stable config hash
// embedded in every artifact for provenance.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinspec/noise.hpp"
#include "spinspec/pipeline.hpp"

namespace spinspec {

struct RunBlock {
    std::uint64_t seed = 1;
    std::int64_t trials = 1000;
    std::string output_dir;  // empty: env default, else current directory
    bool use_bandwidth_bound = false;
    bool include_l0_variance = false;  // l = 0 term in the reported formula
    bool force_large_N = false;
    bool guard_band = true;
    std::int64_t dos_grid_points = 2048;
};

struct ExperimentConfig {
    LatticeGraph graph;
    ModelSpec model;
    ErrorBudget budget;
    NoiseModel noise;
    RunBlock run;
    std::string config_hash;  // FNV-1a over the canonical JSON dump
};

// Throws ConfigError with a "block.field: reason" message on any problem;
// unknown keys anywhere are errors.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path,
                                  const std::vector<std::string>& overrides);

// Apply "block.key=value" overrides onto the raw JSON before parsing.
void apply_override(nlohmann::json& j, const std::string& assignment);

std::string config_hash_hex(const nlohmann::json& canonical);

// Artifact serialization. Every emitted JSON object carries config_hash and
// seed; CSV files carry them in a leading "# meta:" comment.
nlohmann::json plan_to_json(const SamplingPlan& plan);
SamplingPlan plan_from_json(const nlohmann::json& j);
nlohmann::json report_to_json(const EstimateReport& r);
nlohmann::json noise_study_to_json(const NoiseStudyResult& r);
nlohmann::json noise_to_json(const NoiseModel& m);
NoiseModel noise_from_json(const nlohmann::json& j);

// Full round-trip float formatting ("%.17g" semantics) used by all artifact
// writers so identical runs produce byte-identical files.
std::string format_double(double x);

}  // namespace spinspec
