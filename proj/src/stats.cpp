#include "noisekit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace noisekit {

EcdfSummary::EcdfSummary(std::vector<double> samples)
    : sorted_(std::move(samples)) {
  if (sorted_.empty()) {
    throw std::invalid_argument("ecdf requires at least 1 sample");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EcdfSummary::value(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

EcdfSummary ecdf(std::vector<double> samples) {
  return EcdfSummary(std::move(samples));
}

namespace {

// Asymptotic Kolmogorov tail probability Q(lambda).
double kolmogorov_q(double lambda) {
  if (lambda < 1e-8) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  const double a = -2.0 * lambda * lambda;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(a * j * j);
    sum += sign * term;
    if (term < 1e-12) {
      return std::clamp(2.0 * sum, 0.0, 1.0);
    }
    sign = -sign;
  }
  // The series only converges slowly for tiny lambda, where the tail
  // probability is 1 for practical purposes.
  return 1.0;
}

}  // namespace

KsResult ks_two_sample(const std::vector<double>& a,
                       const std::vector<double>& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample requires non-empty samples");
  }
  std::vector<double> sa = a;
  std::vector<double> sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  const double en1 = static_cast<double>(sa.size());
  const double en2 = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  // Walk the merged samples; at every distinct value advance both sides
  // past all ties before reading the gap, so tied values cannot inflate D.
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= x) ++i;
    while (j < sb.size() && sb[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / en1 -
                              static_cast<double>(j) / en2));
  }

  KsResult result;
  result.statistic = d;
  result.n1 = sa.size();
  result.n2 = sb.size();
  const double ne = en1 * en2 / (en1 + en2);
  const double sqrt_ne = std::sqrt(ne);
  result.p_value = kolmogorov_q((sqrt_ne + 0.12 + 0.11 / sqrt_ne) * d);
  return result;
}

std::vector<HistogramBin> histogram(const std::vector<double>& samples,
                                    int bin_count) {
  if (samples.empty()) {
    throw std::invalid_argument("histogram requires at least 1 sample");
  }
  if (bin_count < 1) {
    throw std::invalid_argument("histogram requires at least 1 bin");
  }
  const auto [mn_it, mx_it] = std::minmax_element(samples.begin(), samples.end());
  const double mn = *mn_it;
  const double mx = *mx_it;
  const double width = (mx - mn) / bin_count;

  std::vector<HistogramBin> bins(bin_count);
  for (int b = 0; b < bin_count; ++b) {
    bins[b].center = mn + (b + 0.5) * width;
  }
  for (double v : samples) {
    int idx = 0;
    if (width > 0.0) {
      idx = std::min(static_cast<int>((v - mn) / width), bin_count - 1);
    }
    ++bins[idx].count;
  }
  return bins;
}

}  // namespace noisekit
