#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "noisekit/harness.hpp"
#include "noisekit/select.hpp"

namespace noisekit {

// Insertion-ordered JSON keeps emitted files readable and byte-stable.
using Json = nlohmann::ordered_json;

Json to_json(const NoisyFunctionSpec& spec);
NoisyFunctionSpec function_spec_from_json(const Json& j);

Json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const Json& j);

Json to_json(const SelectionProblem& problem);
SelectionProblem selection_problem_from_json(const Json& j);

Json to_json(const SelectionSolution& solution);
Json to_json(const NoiseEstimate& estimate);
Json to_json(const KsResult& ks);
Json to_json(const ModeSummary& summary);

// Shortest exact decimal form of a double (17 significant digits).
std::string format_double(double value);

std::string csv_header();
std::string csv_row(const TrialRecord& record);

// All file writers stage into "<path>.tmp" and rename over the target, so
// a failed run never leaves a truncated output file behind.
void write_text_file(const std::string& path, const std::string& contents);
void write_records_csv(const std::string& path,
                       const std::vector<TrialRecord>& records);

// Write records CSV(s) plus summary.json under out_dir; returns the paths
// written.  Every summary embeds the config, seed, and tool version needed
// to reproduce it.
std::vector<std::string> write_geometry_outputs(const std::string& out_dir,
                                                const ExperimentConfig& config,
                                                const GeometryResult& result);
std::vector<std::string> write_grid_outputs(const std::string& out_dir,
                                            const ExperimentConfig& config,
                                            const GridResult& result);
std::vector<std::string> write_reuse_outputs(const std::string& out_dir,
                                             const ExperimentConfig& config,
                                             const ReuseResult& result);

}  // namespace noisekit
