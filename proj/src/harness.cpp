#include "noisekit/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "noisekit/select.hpp"

namespace noisekit {

namespace {

// RNG stream purposes; trial t draws from streams t*8 + purpose.  Keeping
// every purpose on its own stream makes the Standard/Arbitrary baselines
// identical across experiments that share a seed, and makes trials
// independent of the worker that runs them.
constexpr std::uint64_t kStreamBaseDraw = 0;
constexpr std::uint64_t kStreamStandardEval = 1;
constexpr std::uint64_t kStreamArbitraryDraw = 2;
constexpr std::uint64_t kStreamArbitraryEval = 3;
constexpr std::uint64_t kStreamPoolDraw = 4;
constexpr std::uint64_t kStreamPoolEval = 5;
constexpr std::uint64_t kStreamBaseEval = 6;
constexpr std::uint64_t kStreamFreeEval = 7;

constexpr double kNoTimeLimit = 1e18;

std::uint64_t stream_id(int trial, std::uint64_t purpose) {
  return static_cast<std::uint64_t>(trial) * 8 + purpose;
}

template <typename Body>
void run_trials(int trials, int threads, const Body& body) {
  threads = std::max(1, std::min(threads, trials));
  if (threads <= 1) {
    for (int t = 0; t < trials; ++t) body(t);
    return;
  }
  std::vector<std::thread> workers;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const int chunk = (trials + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const int lo = w * chunk;
    const int hi = std::min(trials, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &body, &failure, &failure_mutex] {
      try {
        for (int t = lo; t < hi; ++t) body(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (std::thread& worker : workers) worker.join();
  if (failure) std::rethrow_exception(failure);
}

double noise_sd_at_base(const NoisyFunctionSpec& spec, double smooth_at_base) {
  return spec.noise == NoiseKind::Additive ? spec.sigma
                                           : spec.sigma * std::fabs(smooth_at_base);
}

struct Baseline {
  std::vector<double> y0;
  std::vector<double> standard_values;
  std::vector<double> arbitrary_values;
  double smooth_at_base = 0.0;
};

Baseline run_baseline(const NoisyFunctionSpec& spec, std::uint64_t seed,
                      int trial, double base_box, double h, int m) {
  Baseline out;
  SeededRng base_rng(seed, stream_id(trial, kStreamBaseDraw));
  auto [y0, direction] = random_base_and_direction(spec.dim, base_box, base_rng);
  out.y0 = std::move(y0);
  out.smooth_at_base = spec.smooth_value(out.y0);

  const PointSet standard = standard_points(out.y0, direction, h, m);
  SeededRng standard_eval(seed, stream_id(trial, kStreamStandardEval));
  out.standard_values.reserve(m);
  for (int j = 0; j < m; ++j) {
    out.standard_values.push_back(evaluate(spec, standard[j], standard_eval));
  }

  SeededRng arbitrary_draw(seed, stream_id(trial, kStreamArbitraryDraw));
  const PointSet arbitrary = arbitrary_points(out.y0, h, m, arbitrary_draw);
  SeededRng arbitrary_eval(seed, stream_id(trial, kStreamArbitraryEval));
  out.arbitrary_values.reserve(m);
  for (int j = 0; j < m; ++j) {
    out.arbitrary_values.push_back(evaluate(spec, arbitrary[j], arbitrary_eval));
  }
  return out;
}

TrialRecord make_record(int trial, SampleMode mode, const NoiseEstimate& estimate,
                        double base_value) {
  TrialRecord record;
  record.trial = trial;
  record.mode = mode;
  record.estimate = estimate.value;
  if (base_value != 0.0) {
    record.relative_estimate = estimate.value / base_value;
  }
  record.status = estimate.status;
  return record;
}

ModeSummary summarize(const std::vector<TrialRecord>& records,
                      const std::vector<double>& true_eps,
                      std::int64_t evaluations) {
  ModeSummary summary;
  summary.mode = records.front().mode;
  summary.reuse_budget = records.front().reuse_budget;
  summary.evaluations = evaluations;
  summary.estimates.reserve(records.size());
  std::size_t ok = 0, within = 0, optimal = 0, optimal_total = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const TrialRecord& record = records[i];
    summary.estimates.push_back(record.estimate);
    if (record.status == EstimateStatus::Ok) ++ok;
    const double eps = true_eps[i];
    if (record.status == EstimateStatus::Ok && eps > 0.0 &&
        record.estimate >= eps / 4.0 && record.estimate <= 4.0 * eps) {
      ++within;
    }
    if (record.optimal.has_value()) {
      ++optimal_total;
      if (*record.optimal) ++optimal;
    }
  }
  const double count = static_cast<double>(records.size());
  summary.ok_fraction = static_cast<double>(ok) / count;
  summary.within_factor4_fraction = static_cast<double>(within) / count;
  summary.optimal_fraction =
      optimal_total == 0 ? 1.0
                         : static_cast<double>(optimal) /
                               static_cast<double>(optimal_total);
  return summary;
}

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Geometry: return "geometry";
    case ExperimentKind::Grid: return "grid";
    case ExperimentKind::Reuse: return "reuse";
  }
  return "geometry";
}

std::string to_string(SampleMode mode) {
  switch (mode) {
    case SampleMode::Standard: return "standard";
    case SampleMode::Arbitrary: return "arbitrary";
    case SampleMode::Selected: return "selected";
  }
  return "standard";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  if (name == "geometry") return ExperimentKind::Geometry;
  if (name == "grid") return ExperimentKind::Grid;
  if (name == "reuse") return ExperimentKind::Reuse;
  throw std::invalid_argument("unknown experiment kind: " + name);
}

SampleMode sample_mode_from_string(const std::string& name) {
  if (name == "standard") return SampleMode::Standard;
  if (name == "arbitrary") return SampleMode::Arbitrary;
  if (name == "selected") return SampleMode::Selected;
  throw std::invalid_argument("unknown sample mode: " + name);
}

void validate_config(const ExperimentConfig& config) {
  require(!config.n_list.empty(), "n_list must be non-empty");
  require(!config.h_list.empty(), "h_list must be non-empty");
  require(!config.m_list.empty(), "m_list must be non-empty");
  require(config.trials >= 1, "trials must be at least 1");
  require(config.base_box > 0.0, "base_box must be positive");
  require(config.function.sigma >= 0.0, "sigma must be non-negative");
  for (int n : config.n_list) require(n >= 1, "dimensions must be positive");
  for (double h : config.h_list) require(h > 0.0, "h values must be positive");
  for (int m : config.m_list) require(m >= 2, "m values must be at least 2");
  if (config.kind == ExperimentKind::Reuse) {
    require(config.pool_size >= 1, "pool_size must be positive");
    require(!config.r_list.empty(), "r_list must be non-empty");
    const int m = config.m_list.front();
    for (int r : config.r_list) {
      require(r >= 1 && r <= m, "reuse budgets must lie in [1, m]");
      require(r <= config.pool_size, "reuse budgets cannot exceed pool_size");
    }
    require(config.solver_max_nodes >= 1, "solver_max_nodes must be positive");
  }
}

GeometryResult run_geometry(const ExperimentConfig& config, int threads) {
  validate_config(config);
  const int n = config.n_list.front();
  const double h = config.h_list.front();
  NoisyFunctionSpec spec = config.function;
  spec.dim = n;

  GeometryResult result;
  for (int m : config.m_list) {
    const int trials = config.trials;
    std::vector<TrialRecord> standard_records(trials), arbitrary_records(trials);
    std::vector<double> true_eps(trials);
    run_trials(trials, threads, [&](int t) {
      const Baseline b = run_baseline(spec, config.seed, t, config.base_box, h, m);
      standard_records[t] = make_record(
          t, SampleMode::Standard, estimate_noise(b.standard_values),
          b.standard_values.front());
      arbitrary_records[t] = make_record(
          t, SampleMode::Arbitrary, estimate_noise(b.arbitrary_values),
          b.arbitrary_values.front());
      true_eps[t] = noise_sd_at_base(spec, b.smooth_at_base);
    });

    GeometryCell cell;
    cell.m = m;
    cell.records.reserve(2 * static_cast<std::size_t>(trials));
    cell.standard_relative.reserve(trials);
    cell.arbitrary_relative.reserve(trials);
    for (int t = 0; t < trials; ++t) {
      cell.records.push_back(standard_records[t]);
      cell.records.push_back(arbitrary_records[t]);
      cell.standard_relative.push_back(
          standard_records[t].relative_estimate.value_or(0.0));
      cell.arbitrary_relative.push_back(
          arbitrary_records[t].relative_estimate.value_or(0.0));
    }
    const std::int64_t evals = static_cast<std::int64_t>(trials) * m;
    cell.standard = summarize(standard_records, true_eps, evals);
    cell.arbitrary = summarize(arbitrary_records, true_eps, evals);
    cell.ks = ks_two_sample(cell.standard_relative, cell.arbitrary_relative);
    result.cells.push_back(std::move(cell));
  }
  return result;
}

GridResult run_grid(const ExperimentConfig& config, int threads) {
  validate_config(config);
  const int m = config.m_list.front();

  GridResult result;
  for (double h : config.h_list) {
    for (int n : config.n_list) {
      NoisyFunctionSpec spec = config.function;
      spec.dim = n;
      const int trials = config.trials;
      std::vector<TrialRecord> standard_records(trials), arbitrary_records(trials);
      std::vector<double> true_eps(trials);
      run_trials(trials, threads, [&](int t) {
        const Baseline b =
            run_baseline(spec, config.seed, t, config.base_box, h, m);
        standard_records[t] = make_record(
            t, SampleMode::Standard, estimate_noise(b.standard_values),
            b.standard_values.front());
        arbitrary_records[t] = make_record(
            t, SampleMode::Arbitrary, estimate_noise(b.arbitrary_values),
            b.arbitrary_values.front());
        true_eps[t] = noise_sd_at_base(spec, b.smooth_at_base);
      });

      GridCell cell;
      cell.h = h;
      cell.n = n;
      cell.m = m;
      cell.records.reserve(2 * static_cast<std::size_t>(trials));
      for (int t = 0; t < trials; ++t) {
        cell.records.push_back(standard_records[t]);
        cell.records.push_back(arbitrary_records[t]);
      }
      const std::int64_t evals = static_cast<std::int64_t>(trials) * m;
      cell.standard = summarize(standard_records, true_eps, evals);
      cell.arbitrary = summarize(arbitrary_records, true_eps, evals);
      cell.ks = ks_two_sample(cell.standard.estimates, cell.arbitrary.estimates);
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

ReuseResult run_reuse(const ExperimentConfig& config, int threads) {
  validate_config(config);
  if (config.kind != ExperimentKind::Reuse) {
    throw std::invalid_argument("run_reuse requires a reuse configuration");
  }
  const int n = config.n_list.front();
  const double h = config.h_list.front();
  const int m = config.m_list.front();
  const int pool_size = config.pool_size;
  const int trials = config.trials;
  NoisyFunctionSpec spec = config.function;
  spec.dim = n;

  const int budgets = static_cast<int>(config.r_list.size());
  std::vector<TrialRecord> standard_records(trials), arbitrary_records(trials);
  std::vector<std::vector<TrialRecord>> selected_records(
      budgets, std::vector<TrialRecord>(trials));
  std::vector<double> true_eps(trials);

  run_trials(trials, threads, [&](int t) {
    const Baseline b = run_baseline(spec, config.seed, t, config.base_box, h, m);
    standard_records[t] =
        make_record(t, SampleMode::Standard, estimate_noise(b.standard_values),
                    b.standard_values.front());
    arbitrary_records[t] = make_record(
        t, SampleMode::Arbitrary, estimate_noise(b.arbitrary_values),
        b.arbitrary_values.front());
    true_eps[t] = noise_sd_at_base(spec, b.smooth_at_base);

    SeededRng pool_draw(config.seed, stream_id(t, kStreamPoolDraw));
    const PointSet pool_points =
        arbitrary_points(b.y0, h, pool_size + 1, pool_draw);
    std::vector<std::vector<double>> pool(pool_points.points().begin() + 1,
                                          pool_points.points().end());
    SeededRng pool_eval(config.seed, stream_id(t, kStreamPoolEval));
    std::vector<double> pool_values(pool_size);
    for (int q = 0; q < pool_size; ++q) {
      pool_values[q] = evaluate(spec, pool[q], pool_eval);
    }
    SeededRng base_eval(config.seed, stream_id(t, kStreamBaseEval));
    const double base_value = evaluate(spec, b.y0, base_eval);
    SeededRng free_eval(config.seed, stream_id(t, kStreamFreeEval));

    for (int ri = 0; ri < budgets; ++ri) {
      SelectionProblem problem;
      problem.base = b.y0;
      problem.pool = pool;
      problem.slots = m;
      problem.reuse_budget = config.r_list[ri];
      problem.box_radius = h;
      problem.limits.max_nodes = config.solver_max_nodes;
      problem.limits.max_seconds = kNoTimeLimit;
      const SelectionSolution solution = solve_selection(problem);

      std::vector<double> values;
      values.reserve(m + 1);
      values.push_back(base_value);
      for (const SlotAssignment& slot : solution.assignment) {
        if (slot.is_free()) {
          std::vector<double> point = b.y0;
          for (int i = 0; i < n; ++i) point[i] += slot.free_offset[i];
          values.push_back(evaluate(spec, point, free_eval));
        } else {
          values.push_back(pool_values[slot.pool_index]);
        }
      }
      TrialRecord record = make_record(t, SampleMode::Selected,
                                       estimate_noise(values), base_value);
      record.reuse_budget = config.r_list[ri];
      record.optimal = solution.optimal;
      selected_records[ri][t] = record;
    }
  });

  ReuseResult result;
  result.records.reserve(static_cast<std::size_t>(trials) * (2 + budgets));
  for (int t = 0; t < trials; ++t) {
    result.records.push_back(standard_records[t]);
    result.records.push_back(arbitrary_records[t]);
    for (int ri = 0; ri < budgets; ++ri) {
      result.records.push_back(selected_records[ri][t]);
    }
  }
  const std::int64_t baseline_evals = static_cast<std::int64_t>(trials) * m;
  result.standard = summarize(standard_records, true_eps, baseline_evals);
  result.arbitrary = summarize(arbitrary_records, true_eps, baseline_evals);
  for (int ri = 0; ri < budgets; ++ri) {
    const std::int64_t fresh = static_cast<std::int64_t>(trials) *
                               (m - config.r_list[ri]);
    result.selected.push_back(summarize(selected_records[ri], true_eps, fresh));
  }
  result.pool_evaluations = static_cast<std::int64_t>(trials) * pool_size;
  result.base_evaluations = trials;
  return result;
}

}  // namespace noisekit
