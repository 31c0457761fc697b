#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noisekit/diff_table.hpp"
#include "noisekit/models.hpp"
#include "noisekit/stats.hpp"

namespace noisekit {

enum class ExperimentKind { Geometry, Grid, Reuse };
enum class SampleMode { Standard, Arbitrary, Selected };

std::string to_string(ExperimentKind kind);
std::string to_string(SampleMode mode);
ExperimentKind experiment_kind_from_string(const std::string& name);
SampleMode sample_mode_from_string(const std::string& name);

// A full experiment description.  Everything that affects the computed
// numbers lives here; the worker-thread count deliberately does not, so the
// same config and seed always produce the same output bytes.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Geometry;
  NoisyFunctionSpec function;
  std::vector<int> n_list{10};
  std::vector<double> h_list{1e-6};
  std::vector<int> m_list{6};
  int trials = 100;
  double base_box = 10.0;  // base points drawn uniformly from [-box, box]^n
  int pool_size = 50;      // Reuse only
  std::vector<int> r_list{};
  std::uint64_t seed = 0;
  // Deterministic per-solve search budget for the Reuse experiment.  The
  // solver's wall-clock limit is disabled so runs cannot diverge under load.
  std::int64_t solver_max_nodes = 8000;
};

void validate_config(const ExperimentConfig& config);

struct TrialRecord {
  int trial = 0;
  SampleMode mode = SampleMode::Standard;
  double estimate = 0.0;
  std::optional<double> relative_estimate;  // estimate / f(y0), noisy f
  EstimateStatus status = EstimateStatus::Ok;
  std::optional<int> reuse_budget;  // Selected rows only
  std::optional<bool> optimal;      // Selected rows only
};

// Per-mode aggregate over one experiment cell.  `estimates` is trial-ordered
// with declines recorded as 0, ready for ECDF plots.
struct ModeSummary {
  SampleMode mode = SampleMode::Standard;
  std::optional<int> reuse_budget;
  double ok_fraction = 0.0;
  double within_factor4_fraction = 0.0;
  double optimal_fraction = 1.0;  // Selected rows only; 1 elsewhere
  std::int64_t evaluations = 0;
  std::vector<double> estimates;
};

struct GeometryCell {
  int m = 0;
  std::vector<TrialRecord> records;  // trial-major: standard, arbitrary
  ModeSummary standard, arbitrary;
  std::vector<double> standard_relative, arbitrary_relative;
  KsResult ks;  // between the relative-estimate populations
};

struct GeometryResult {
  std::vector<GeometryCell> cells;  // one per m in m_list
};

struct GridCell {
  double h = 0.0;
  int n = 0;
  int m = 0;
  std::vector<TrialRecord> records;
  ModeSummary standard, arbitrary;
  KsResult ks;  // between the raw-estimate populations
};

struct GridResult {
  std::vector<GridCell> cells;  // h-major, then n
};

struct ReuseResult {
  std::vector<TrialRecord> records;  // trial-major: standard, arbitrary, R...
  ModeSummary standard, arbitrary;
  std::vector<ModeSummary> selected;  // one per R in r_list order
  std::int64_t pool_evaluations = 0;
  std::int64_t base_evaluations = 0;
};

// Runs are deterministic functions of (config, seed): trials are handed to
// worker threads in contiguous ranges, each trial derives private RNG
// streams from its index, and aggregation walks records in trial order.
GeometryResult run_geometry(const ExperimentConfig& config, int threads = 1);
GridResult run_grid(const ExperimentConfig& config, int threads = 1);
ReuseResult run_reuse(const ExperimentConfig& config, int threads = 1);

}  // namespace noisekit
