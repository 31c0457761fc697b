#include "noisekit/diff_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace noisekit {

const std::vector<double>& DifferenceTable::column(int k) const {
  if (k < 1 || k > max_order()) {
    throw std::domain_error("difference column order out of range");
  }
  return columns[k - 1];
}

DifferenceTable build_table(const std::vector<double>& values) {
  if (values.size() < 2) {
    throw std::invalid_argument("build_table requires at least 2 values");
  }
  DifferenceTable table;
  table.values = values;
  const std::vector<double>* prev = &table.values;
  while (prev->size() > 1) {
    std::vector<double> next(prev->size() - 1);
    for (std::size_t j = 0; j + 1 < prev->size(); ++j) {
      next[j] = (*prev)[j + 1] - (*prev)[j];
    }
    table.columns.push_back(std::move(next));
    prev = &table.columns.back();
  }
  return table;
}

double gamma_coefficient(int k) {
  if (k < 1) {
    throw std::domain_error("gamma_coefficient requires k >= 1");
  }
  double g = 1.0;
  for (int j = 1; j <= k; ++j) {
    g *= static_cast<double>(j) / (2.0 * (2.0 * j - 1.0));
  }
  return g;
}

double estimate_at_order(const DifferenceTable& table, int k) {
  const std::vector<double>& col = table.column(k);
  double sum_sq = 0.0;
  for (double v : col) {
    sum_sq += v * v;
  }
  return std::sqrt(gamma_coefficient(k) * sum_sq / static_cast<double>(col.size()));
}

const char* to_string(EstimateStatus status) {
  switch (status) {
    case EstimateStatus::Ok: return "ok";
    case EstimateStatus::SpreadTooLarge: return "spread_too_large";
    case EstimateStatus::NoAgreement: return "no_agreement";
    case EstimateStatus::TooFewPoints: return "too_few_points";
  }
  return "unknown";
}

NoiseEstimate estimate_noise(const std::vector<double>& values,
                             const HeuristicOptions& options) {
  NoiseEstimate result;
  const int n = static_cast<int>(values.size());
  if (n < 4) {
    result.status = EstimateStatus::TooFewPoints;
    return result;
  }

  DifferenceTable table = build_table(values);
  result.per_order.reserve(table.max_order());
  for (int k = 1; k <= table.max_order(); ++k) {
    const std::vector<double>& col = table.column(k);
    OrderEstimate entry;
    entry.order = k;
    entry.estimate = estimate_at_order(table, k);
    const auto [mn, mx] = std::minmax_element(col.begin(), col.end());
    entry.sign_change = (*mn) * (*mx) < 0.0;
    result.per_order.push_back(entry);
  }

  const auto [fmin, fmax] = std::minmax_element(values.begin(), values.end());
  const double scale = std::max(std::fabs(*fmin), std::fabs(*fmax));
  if (*fmax - *fmin > options.spread_factor * scale) {
    result.status = EstimateStatus::SpreadTooLarge;
    return result;
  }

  for (int k = 1; k <= n - 3; ++k) {
    const double e0 = result.per_order[k - 1].estimate;
    const double e1 = result.per_order[k].estimate;
    const double e2 = result.per_order[k + 1].estimate;
    const double lo = std::min({e0, e1, e2});
    const double hi = std::max({e0, e1, e2});
    if (hi <= options.agreement_factor * lo && result.per_order[k - 1].sign_change) {
      result.selected_order = k;
      result.value = e0;
      result.status = EstimateStatus::Ok;
      return result;
    }
  }

  result.status = EstimateStatus::NoAgreement;
  return result;
}

double optimal_fd_interval(double noise_level, double curvature_bound) {
  if (noise_level <= 0.0 || curvature_bound <= 0.0) {
    throw std::domain_error("optimal_fd_interval requires positive arguments");
  }
  return std::pow(8.0, 0.25) * std::sqrt(noise_level / curvature_bound);
}

}  // namespace noisekit
