#pragma once

#include <cstddef>
#include <vector>

namespace noisekit {

// Empirical distribution function over a fixed sample.  Queries run in
// O(log N) against the sorted copy taken at construction.
class EcdfSummary {
 public:
  // Throws std::invalid_argument on empty input.
  explicit EcdfSummary(std::vector<double> samples);

  // Fraction of samples <= x (right-continuous step function).
  double value(double x) const;

  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted_samples() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

EcdfSummary ecdf(std::vector<double> samples);

struct KsResult {
  double statistic = 0.0;  // sup-norm distance between the two ECDFs
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

// Two-sample Kolmogorov-Smirnov test.  The statistic is the exact maximum
// ECDF gap; the p-value uses the asymptotic Kolmogorov distribution with
// the small-sample correction
//   lambda = (sqrt(ne) + 0.12 + 0.11 / sqrt(ne)) * D,  ne = n1 n2 / (n1 + n2),
// and Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2) truncated
// once terms drop below 1e-12.  Throws std::invalid_argument when either
// sample is empty.
KsResult ks_two_sample(const std::vector<double>& a,
                       const std::vector<double>& b);

struct HistogramBin {
  double center = 0.0;
  std::size_t count = 0;
};

// Equal-width histogram over [min, max] of the samples.  Counts always sum
// to the sample size; the maximum lands in the last bin.  Throws
// std::invalid_argument on empty input or bin_count < 1.
std::vector<HistogramBin> histogram(const std::vector<double>& samples,
                                    int bin_count);

}  // namespace noisekit
