#include "noisekit/serde.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "noisekit/version.hpp"

namespace noisekit {

namespace {

const char* to_string(GroundTruth ground_truth) {
  return ground_truth == GroundTruth::Quadratic ? "quadratic" : "power_sum";
}

const char* to_string(NoiseKind noise) {
  return noise == NoiseKind::Additive ? "additive" : "multiplicative";
}

GroundTruth ground_truth_from_string(const std::string& name) {
  if (name == "quadratic") return GroundTruth::Quadratic;
  if (name == "power_sum") return GroundTruth::PowerSum;
  throw std::invalid_argument("unknown ground truth: " + name);
}

NoiseKind noise_kind_from_string(const std::string& name) {
  if (name == "additive") return NoiseKind::Additive;
  if (name == "multiplicative") return NoiseKind::Multiplicative;
  throw std::invalid_argument("unknown noise kind: " + name);
}

std::string cell_file_name(double h, int n) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "records_h%g_n%d.csv", h, n);
  return buffer;
}

}  // namespace

Json to_json(const NoisyFunctionSpec& spec) {
  return Json{{"ground_truth", to_string(spec.ground_truth)},
              {"power", spec.power},
              {"noise", to_string(spec.noise)},
              {"sigma", spec.sigma},
              {"dim", spec.dim}};
}

NoisyFunctionSpec function_spec_from_json(const Json& j) {
  NoisyFunctionSpec spec;
  spec.ground_truth =
      ground_truth_from_string(j.at("ground_truth").get<std::string>());
  spec.power = j.value("power", spec.power);
  spec.noise = noise_kind_from_string(j.at("noise").get<std::string>());
  spec.sigma = j.at("sigma").get<double>();
  spec.dim = j.value("dim", spec.dim);
  return spec;
}

Json to_json(const ExperimentConfig& config) {
  return Json{{"kind", to_string(config.kind)},
              {"function", to_json(config.function)},
              {"n_list", config.n_list},
              {"h_list", config.h_list},
              {"m_list", config.m_list},
              {"trials", config.trials},
              {"base_box", config.base_box},
              {"pool_size", config.pool_size},
              {"r_list", config.r_list},
              {"seed", config.seed},
              {"solver_max_nodes", config.solver_max_nodes}};
}

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig config;
  config.kind = experiment_kind_from_string(j.at("kind").get<std::string>());
  config.function = function_spec_from_json(j.at("function"));
  config.n_list = j.at("n_list").get<std::vector<int>>();
  config.h_list = j.at("h_list").get<std::vector<double>>();
  config.m_list = j.at("m_list").get<std::vector<int>>();
  config.trials = j.at("trials").get<int>();
  config.base_box = j.value("base_box", config.base_box);
  config.pool_size = j.value("pool_size", config.pool_size);
  config.r_list = j.value("r_list", config.r_list);
  config.seed = j.at("seed").get<std::uint64_t>();
  config.solver_max_nodes = j.value("solver_max_nodes", config.solver_max_nodes);
  return config;
}

Json to_json(const SelectionProblem& problem) {
  return Json{{"base", problem.base},
              {"pool", problem.pool},
              {"slots", problem.slots},
              {"reuse_budget", problem.reuse_budget},
              {"box_radius", problem.box_radius},
              {"limits",
               Json{{"max_nodes", problem.limits.max_nodes},
                    {"max_seconds", problem.limits.max_seconds}}}};
}

SelectionProblem selection_problem_from_json(const Json& j) {
  SelectionProblem problem;
  problem.base = j.at("base").get<std::vector<double>>();
  problem.pool = j.at("pool").get<std::vector<std::vector<double>>>();
  problem.slots = j.at("slots").get<int>();
  problem.reuse_budget = j.at("reuse_budget").get<int>();
  problem.box_radius = j.value("box_radius", problem.box_radius);
  if (j.contains("limits")) {
    const Json& limits = j.at("limits");
    problem.limits.max_nodes = limits.value("max_nodes", problem.limits.max_nodes);
    problem.limits.max_seconds =
        limits.value("max_seconds", problem.limits.max_seconds);
  }
  return problem;
}

Json to_json(const SelectionSolution& solution) {
  Json assignment = Json::array();
  for (const SlotAssignment& slot : solution.assignment) {
    if (slot.is_free()) {
      assignment.push_back(Json{{"free_offset", slot.free_offset}});
    } else {
      assignment.push_back(Json{{"pool_index", slot.pool_index}});
    }
  }
  return Json{{"assignment", std::move(assignment)},
              {"objective", solution.objective},
              {"optimal", solution.optimal},
              {"nodes_visited", solution.nodes_visited},
              {"wall_seconds", solution.wall_seconds},
              {"warnings", solution.warnings}};
}

Json to_json(const NoiseEstimate& estimate) {
  Json per_order = Json::array();
  for (const OrderEstimate& entry : estimate.per_order) {
    per_order.push_back(Json{{"order", entry.order},
                             {"estimate", entry.estimate},
                             {"sign_change", entry.sign_change}});
  }
  Json j{{"per_order", std::move(per_order)},
         {"selected_order", nullptr},
         {"value", estimate.value},
         {"status", to_string(estimate.status)}};
  if (estimate.selected_order.has_value()) {
    j["selected_order"] = *estimate.selected_order;
  }
  return j;
}

Json to_json(const KsResult& ks) {
  return Json{{"statistic", ks.statistic},
              {"p_value", ks.p_value},
              {"n1", ks.n1},
              {"n2", ks.n2}};
}

Json to_json(const ModeSummary& summary) {
  Json j{{"mode", to_string(summary.mode)}};
  if (summary.reuse_budget.has_value()) j["R"] = *summary.reuse_budget;
  j["ok_fraction"] = summary.ok_fraction;
  j["within_factor4_fraction"] = summary.within_factor4_fraction;
  if (summary.reuse_budget.has_value()) {
    j["optimal_fraction"] = summary.optimal_fraction;
  }
  j["evaluations"] = summary.evaluations;
  j["estimates"] = summary.estimates;
  return j;
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string csv_header() {
  return "trial,mode,estimate,relative_estimate,status,R,optimal\n";
}

std::string csv_row(const TrialRecord& record) {
  std::string row;
  row += std::to_string(record.trial);
  row += ',';
  row += to_string(record.mode);
  row += ',';
  row += format_double(record.estimate);
  row += ',';
  if (record.relative_estimate.has_value()) {
    row += format_double(*record.relative_estimate);
  }
  row += ',';
  row += to_string(record.status);
  row += ',';
  if (record.reuse_budget.has_value()) {
    row += std::to_string(*record.reuse_budget);
  }
  row += ',';
  if (record.optimal.has_value()) {
    row += *record.optimal ? "true" : "false";
  }
  row += '\n';
  return row;
}

void write_text_file(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path());
  }
  const fs::path staged = target.string() + ".tmp";
  {
    std::ofstream out(staged, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open for writing: " + staged.string());
    }
    out << contents;
    out.flush();
    if (!out) {
      throw std::runtime_error("write failed: " + staged.string());
    }
  }
  fs::rename(staged, target);
}

void write_records_csv(const std::string& path,
                       const std::vector<TrialRecord>& records) {
  std::string contents = csv_header();
  for (const TrialRecord& record : records) {
    contents += csv_row(record);
  }
  write_text_file(path, contents);
}

namespace {

Json summary_shell(const ExperimentConfig& config) {
  return Json{{"version", NOISEKIT_VERSION},
              {"seed", config.seed},
              {"config", to_json(config)}};
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace

std::vector<std::string> write_geometry_outputs(const std::string& out_dir,
                                                const ExperimentConfig& config,
                                                const GeometryResult& result) {
  std::vector<std::string> written;
  Json cells = Json::array();
  for (const GeometryCell& cell : result.cells) {
    const std::string csv_path =
        join_path(out_dir, "records_m" + std::to_string(cell.m) + ".csv");
    write_records_csv(csv_path, cell.records);
    written.push_back(csv_path);
    cells.push_back(Json{{"m", cell.m},
                         {"ks", to_json(cell.ks)},
                         {"standard", to_json(cell.standard)},
                         {"arbitrary", to_json(cell.arbitrary)},
                         {"standard_relative", cell.standard_relative},
                         {"arbitrary_relative", cell.arbitrary_relative}});
  }
  Json summary = summary_shell(config);
  summary["cells"] = std::move(cells);
  const std::string summary_path = join_path(out_dir, "summary.json");
  write_text_file(summary_path, summary.dump(2) + "\n");
  written.push_back(summary_path);
  return written;
}

std::vector<std::string> write_grid_outputs(const std::string& out_dir,
                                            const ExperimentConfig& config,
                                            const GridResult& result) {
  std::vector<std::string> written;
  Json cells = Json::array();
  for (const GridCell& cell : result.cells) {
    const std::string csv_path = join_path(out_dir, cell_file_name(cell.h, cell.n));
    write_records_csv(csv_path, cell.records);
    written.push_back(csv_path);
    cells.push_back(Json{{"h", cell.h},
                         {"n", cell.n},
                         {"m", cell.m},
                         {"ks", to_json(cell.ks)},
                         {"standard", to_json(cell.standard)},
                         {"arbitrary", to_json(cell.arbitrary)}});
  }
  Json summary = summary_shell(config);
  summary["cells"] = std::move(cells);
  const std::string summary_path = join_path(out_dir, "summary.json");
  write_text_file(summary_path, summary.dump(2) + "\n");
  written.push_back(summary_path);
  return written;
}

std::vector<std::string> write_reuse_outputs(const std::string& out_dir,
                                             const ExperimentConfig& config,
                                             const ReuseResult& result) {
  std::vector<std::string> written;
  const std::string csv_path = join_path(out_dir, "records.csv");
  write_records_csv(csv_path, result.records);
  written.push_back(csv_path);

  Json selected = Json::array();
  for (const ModeSummary& summary : result.selected) {
    selected.push_back(to_json(summary));
  }
  Json summary = summary_shell(config);
  summary["standard"] = to_json(result.standard);
  summary["arbitrary"] = to_json(result.arbitrary);
  summary["selected"] = std::move(selected);
  summary["pool_evaluations"] = result.pool_evaluations;
  summary["base_evaluations"] = result.base_evaluations;
  const std::string summary_path = join_path(out_dir, "summary.json");
  write_text_file(summary_path, summary.dump(2) + "\n");
  written.push_back(summary_path);
  return written;
}

}  // namespace noisekit
