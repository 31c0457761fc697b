#include "noisekit/models.hpp"

#include <cmath>
#include <stdexcept>

namespace noisekit {

namespace {

constexpr std::uint64_t kWeylIncrement = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream) {
  counter_ = mix64(seed + kWeylIncrement) ^ mix64(stream ^ 0x6A09E667F3BCC909ull);
}

std::uint64_t SeededRng::next_u64() {
  counter_ += kWeylIncrement;
  return mix64(counter_);
}

double SeededRng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double SeededRng::gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  // Box-Muller; the first uniform is shifted into (0, 1] to keep the log finite.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  cached_gaussian_ = radius * std::sin(angle);
  has_cached_gaussian_ = true;
  return radius * std::cos(angle);
}

double NoisyFunctionSpec::smooth_value(const std::vector<double>& x) const {
  switch (ground_truth) {
    case GroundTruth::Quadratic: {
      double acc = 0.0;
      for (double xi : x) acc += xi * xi;
      return acc;
    }
    case GroundTruth::PowerSum: {
      double sum = 0.0;
      for (double xi : x) sum += xi;
      double acc = 1.0;
      for (int rep = 0; rep < power; ++rep) acc *= sum;
      return acc;
    }
  }
  throw std::logic_error("unknown ground truth");
}

double evaluate(const NoisyFunctionSpec& spec, const std::vector<double>& x,
                SeededRng& rng) {
  if (static_cast<int>(x.size()) != spec.dim) {
    throw std::invalid_argument("evaluation point dimension mismatch");
  }
  const double smooth = spec.smooth_value(x);
  const double noise = spec.sigma * rng.gaussian();
  switch (spec.noise) {
    case NoiseKind::Additive: return smooth + noise;
    case NoiseKind::Multiplicative: return smooth * (1.0 + noise);
  }
  throw std::logic_error("unknown noise kind");
}

PointSet standard_points(const std::vector<double>& y0,
                         const std::vector<double>& direction, double h,
                         int count) {
  if (h <= 0.0) {
    throw std::invalid_argument("standard_points requires h > 0");
  }
  if (count < 2) {
    throw std::invalid_argument("standard_points requires count >= 2");
  }
  if (direction.size() != y0.size()) {
    throw std::invalid_argument("direction dimension mismatch");
  }
  double norm_sq = 0.0;
  for (double di : direction) norm_sq += di * di;
  if (std::fabs(std::sqrt(norm_sq) - 1.0) > 1e-12) {
    throw std::invalid_argument("direction must have unit Euclidean norm");
  }
  std::vector<std::vector<double>> points(count, y0);
  for (int j = 1; j < count; ++j) {
    for (std::size_t i = 0; i < y0.size(); ++i) {
      points[j][i] = y0[i] + j * h * direction[i];
    }
  }
  return PointSet(std::move(points));
}

PointSet arbitrary_points(const std::vector<double>& y0, double h, int count,
                          SeededRng& rng) {
  if (h <= 0.0) {
    throw std::invalid_argument("arbitrary_points requires h > 0");
  }
  if (count < 2) {
    throw std::invalid_argument("arbitrary_points requires count >= 2");
  }
  std::vector<std::vector<double>> points(count, y0);
  for (int j = 1; j < count; ++j) {
    for (std::size_t i = 0; i < y0.size(); ++i) {
      points[j][i] = y0[i] + rng.uniform(-h, h);
    }
  }
  return PointSet(std::move(points));
}

std::pair<std::vector<double>, std::vector<double>> random_base_and_direction(
    int n, double box, SeededRng& rng) {
  if (n < 1) {
    throw std::invalid_argument("dimension must be at least 1");
  }
  if (box <= 0.0) {
    throw std::invalid_argument("box must be positive");
  }
  std::vector<double> base(n);
  for (double& bi : base) bi = rng.uniform(-box, box);
  std::vector<double> direction(n);
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (double& di : direction) {
      di = rng.gaussian();
      norm_sq += di * di;
    }
  } while (norm_sq == 0.0);
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& di : direction) di *= inv;
  return {std::move(base), std::move(direction)};
}

}  // namespace noisekit
