#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "noisekit/diff_table.hpp"
#include "noisekit/harness.hpp"
#include "noisekit/models.hpp"
#include "noisekit/select.hpp"
#include "noisekit/serde.hpp"
#include "noisekit/version.hpp"

namespace {

using noisekit::ExperimentConfig;
using noisekit::ExperimentKind;
using noisekit::Json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<double> read_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> values;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::size_t consumed = 0;
    double value = 0.0;
    try {
      value = std::stod(line.substr(first), &consumed);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(line_number) +
                               ": not a number: " + line);
    }
    const auto rest = line.find_first_not_of(" \t\r", first + consumed);
    if (rest != std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(line_number) +
                               ": trailing content: " + line);
    }
    values.push_back(value);
  }
  return values;
}

// JSON alternative to a plain values file: evaluate a noisy function at
// listed points with a seeded generator, then estimate from those values.
std::vector<double> values_from_points_json(const std::string& path) {
  const Json j = Json::parse(read_file(path));
  noisekit::NoisyFunctionSpec spec =
      noisekit::function_spec_from_json(j.at("function"));
  const auto points = j.at("points").get<std::vector<std::vector<double>>>();
  if (!j.at("function").contains("dim") && !points.empty()) {
    spec.dim = static_cast<int>(points.front().size());
  }
  const auto seed = j.value("seed", std::uint64_t{0});
  noisekit::SeededRng rng(seed, 0);
  std::vector<double> values;
  values.reserve(points.size());
  for (const std::vector<double>& point : points) {
    values.push_back(noisekit::evaluate(spec, point, rng));
  }
  return values;
}

int cmd_estimate(const std::string& values_path, const std::string& points_path,
                 double spread_factor, double agreement_factor) {
  if (values_path.empty() == points_path.empty()) {
    throw std::runtime_error("pass exactly one of --values or --points");
  }
  const std::vector<double> values = values_path.empty()
                                         ? values_from_points_json(points_path)
                                         : read_values_file(values_path);
  noisekit::HeuristicOptions options;
  options.spread_factor = spread_factor;
  options.agreement_factor = agreement_factor;
  const noisekit::NoiseEstimate estimate =
      noisekit::estimate_noise(values, options);
  std::cout << noisekit::to_json(estimate).dump(2) << "\n";
  switch (estimate.status) {
    case noisekit::EstimateStatus::Ok:
      return 0;
    case noisekit::EstimateStatus::TooFewPoints:
      std::cerr << "error: too few values (" << values.size()
                << "); at least 4 are required\n";
      return 1;
    default:
      std::cerr << "declined: " << noisekit::to_string(estimate.status) << "\n";
      return 2;
  }
}

int cmd_select(const std::string& problem_path) {
  const noisekit::SelectionProblem problem =
      noisekit::selection_problem_from_json(Json::parse(read_file(problem_path)));
  const noisekit::SelectionSolution solution = noisekit::solve_selection(problem);
  std::cout << noisekit::to_json(solution).dump(2) << "\n";
  return 0;
}

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig config;
  config.function.sigma = 1e-3;
  if (name == "geometry") {
    config.kind = ExperimentKind::Geometry;
    config.function.ground_truth = noisekit::GroundTruth::Quadratic;
    config.function.noise = noisekit::NoiseKind::Multiplicative;
    config.n_list = {10};
    config.h_list = {1e-6};
    config.m_list = {6, 12, 24};
    config.trials = 10000;
  } else if (name == "grid") {
    config.kind = ExperimentKind::Grid;
    config.function.ground_truth = noisekit::GroundTruth::PowerSum;
    config.function.power = 6;
    config.function.noise = noisekit::NoiseKind::Additive;
    config.n_list = {2, 6, 10};
    config.h_list = {1e-2, 1e-4, 1e-6, 1e-8};
    config.m_list = {6};
    config.trials = 10000;
  } else if (name == "reuse") {
    config.kind = ExperimentKind::Reuse;
    config.function.ground_truth = noisekit::GroundTruth::Quadratic;
    config.function.noise = noisekit::NoiseKind::Multiplicative;
    config.n_list = {6};
    config.h_list = {1e-6};
    config.m_list = {6};
    config.pool_size = 50;
    config.r_list = {6, 5, 4, 3, 2, 1};
    config.trials = 1000;
  } else {
    throw std::runtime_error("unknown preset: " + name);
  }
  return config;
}

void print_paths(const std::vector<std::string>& paths) {
  for (const std::string& path : paths) {
    std::cout << "wrote " << path << "\n";
  }
}

int cmd_experiment(ExperimentConfig config, int threads,
                   const std::string& out_dir) {
  noisekit::validate_config(config);
  std::vector<std::string> written;
  switch (config.kind) {
    case ExperimentKind::Geometry: {
      const noisekit::GeometryResult result = run_geometry(config, threads);
      std::printf("%4s %12s %12s %9s %9s\n", "m", "KS stat", "KS p",
                  "ok(std)", "ok(arb)");
      for (const noisekit::GeometryCell& cell : result.cells) {
        std::printf("%4d %12.4g %12.4g %9.3f %9.3f\n", cell.m,
                    cell.ks.statistic, cell.ks.p_value,
                    cell.standard.ok_fraction, cell.arbitrary.ok_fraction);
      }
      written = write_geometry_outputs(out_dir, config, result);
      break;
    }
    case ExperimentKind::Grid: {
      const noisekit::GridResult result = run_grid(config, threads);
      std::printf("%10s %4s %14s %14s %12s\n", "h", "n", "within4(std)",
                  "within4(arb)", "KS p");
      for (const noisekit::GridCell& cell : result.cells) {
        std::printf("%10.2g %4d %14.3f %14.3f %12.4g\n", cell.h, cell.n,
                    cell.standard.within_factor4_fraction,
                    cell.arbitrary.within_factor4_fraction, cell.ks.p_value);
      }
      written = write_grid_outputs(out_dir, config, result);
      break;
    }
    case ExperimentKind::Reuse: {
      const noisekit::ReuseResult result = run_reuse(config, threads);
      std::printf("%10s %4s %9s %9s %9s\n", "mode", "R", "ok", "within4",
                  "optimal");
      std::printf("%10s %4s %9.3f %9.3f %9s\n", "standard", "-",
                  result.standard.ok_fraction,
                  result.standard.within_factor4_fraction, "-");
      std::printf("%10s %4s %9.3f %9.3f %9s\n", "arbitrary", "-",
                  result.arbitrary.ok_fraction,
                  result.arbitrary.within_factor4_fraction, "-");
      for (const noisekit::ModeSummary& summary : result.selected) {
        std::printf("%10s %4d %9.3f %9.3f %9.3f\n", "selected",
                    summary.reuse_budget.value_or(0), summary.ok_fraction,
                    summary.within_factor4_fraction, summary.optimal_fraction);
      }
      written = write_reuse_outputs(out_dir, config, result);
      break;
    }
  }
  print_paths(written);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noise-level estimation and evaluation-reuse toolkit"};
  app.set_version_flag("--version", NOISEKIT_VERSION);
  app.require_subcommand(1);

  CLI::App* estimate =
      app.add_subcommand("estimate", "Estimate the noise level of a value list");
  std::string values_path, points_path;
  double spread_factor = 0.1, agreement_factor = 4.0;
  estimate->add_option("--values", values_path,
                       "text file with one function value per line");
  estimate->add_option("--points", points_path,
                       "JSON file with points, a function spec, and a seed");
  estimate->add_option("--spread-factor", spread_factor,
                       "decline when the value spread exceeds this fraction");
  estimate->add_option("--agreement-factor", agreement_factor,
                       "cross-order agreement factor");

  CLI::App* select =
      app.add_subcommand("select", "Solve a point-selection problem");
  std::string problem_path;
  select->add_option("--problem", problem_path, "problem JSON file")->required();

  CLI::App* experiment =
      app.add_subcommand("experiment", "Run a Monte-Carlo experiment");
  std::string preset, config_path, out_dir;
  std::uint64_t seed = 0;
  int trials = 0;
  int threads = 1;
  experiment->add_option("--preset", preset, "geometry, grid, or reuse")
      ->check(CLI::IsMember({"geometry", "grid", "reuse"}));
  experiment->add_option("--config", config_path, "experiment config JSON file");
  experiment->add_option("--out", out_dir, "output directory")->required();
  experiment->add_option("--seed", seed, "RNG seed");
  experiment->add_option("--trials", trials, "trial count override");
  experiment->add_option("--threads", threads, "worker thread count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (estimate->parsed()) {
      return cmd_estimate(values_path, points_path, spread_factor,
                          agreement_factor);
    }
    if (select->parsed()) {
      return cmd_select(problem_path);
    }
    if (preset.empty() == config_path.empty()) {
      throw std::runtime_error("pass exactly one of --preset or --config");
    }
    ExperimentConfig config =
        preset.empty()
            ? noisekit::config_from_json(Json::parse(read_file(config_path)))
            : preset_config(preset);
    if (experiment->count("--seed") > 0) config.seed = seed;
    if (experiment->count("--trials") > 0) config.trials = trials;
    return cmd_experiment(std::move(config), threads, out_dir);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
