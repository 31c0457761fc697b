#pragma once

#include <optional>
#include <vector>

namespace noisekit {

// Table of repeated forward differences of a list of function values.
// Column k holds the order-k differences; with N input values column k
// has N - k entries.
struct DifferenceTable {
  std::vector<double> values;                // the order-0 column
  std::vector<std::vector<double>> columns;  // columns[k-1] = order-k differences

  int max_order() const { return static_cast<int>(columns.size()); }

  // k in [1, max_order()]; throws std::domain_error otherwise.
  const std::vector<double>& column(int k) const;
};

// Builds the full difference table.  Throws std::invalid_argument when
// fewer than 2 values are given.
DifferenceTable build_table(const std::vector<double>& values);

// Normalization weight (k!)^2 / (2k)! used to turn the mean squared
// order-k difference into a noise variance.  Evaluated by the recurrence
// g_k = g_{k-1} * k / (2 (2k - 1)), which stays in range for any k.
// Throws std::domain_error for k < 1.
double gamma_coefficient(int k);

// Noise level implied by column k alone:
// sqrt(gamma_coefficient(k) * mean of squared column-k entries).
// Throws std::domain_error when k is outside [1, max_order()].
double estimate_at_order(const DifferenceTable& table, int k);

enum class EstimateStatus { Ok, SpreadTooLarge, NoAgreement, TooFewPoints };

const char* to_string(EstimateStatus status);

struct OrderEstimate {
  int order = 0;
  double estimate = 0.0;
  bool sign_change = false;  // column holds both positive and negative entries
};

struct HeuristicOptions {
  // Decline when (max f - min f) exceeds this fraction of max(|max f|, |min f|).
  double spread_factor = 0.1;
  // Consecutive-order estimates must agree within this multiplicative factor.
  double agreement_factor = 4.0;
};

// Result of the full noise-level estimation.  status == Ok exactly when an
// order was selected, and exactly when value > 0.
struct NoiseEstimate {
  std::vector<OrderEstimate> per_order;
  std::optional<int> selected_order;
  double value = 0.0;
  EstimateStatus status = EstimateStatus::NoAgreement;

  bool ok() const { return status == EstimateStatus::Ok; }
};

// Estimates the noise level of a list of function values sampled at nearby
// points.  Requires at least 4 values (returns TooFewPoints otherwise).
//
// Two decline heuristics guard the estimate, applied in this order:
//   1. spread guard: the value spread indicates the points are too far
//      apart for noise to dominate (SpreadTooLarge);
//   2. order selection: accept the smallest order k in [1, N-3] whose
//      estimate agrees with the next two orders within the agreement
//      factor and whose column shows a sign change; decline with
//      NoAgreement when no order qualifies.
// Declined results carry value 0.
NoiseEstimate estimate_noise(const std::vector<double>& values,
                             const HeuristicOptions& options = {});

// Forward-difference step that balances noise against curvature:
// 8^(1/4) * sqrt(noise_level / curvature_bound).  Both arguments must be
// positive; throws std::domain_error otherwise.
double optimal_fd_interval(double noise_level, double curvature_bound);

}  // namespace noisekit
