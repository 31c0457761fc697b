#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "noisekit/point_set.hpp"

namespace noisekit {

// Counter-based pseudo-random generator.  A (seed, stream) pair fully
// determines the sequence, independently of platform or thread count, so
// parallel trial loops can draw from disjoint streams without sharing
// state.  Gaussians come from Box-Muller on the uniform output.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  double uniform01();  // [0, 1)
  double uniform(double lo, double hi);
  double gaussian();   // standard normal

 private:
  std::uint64_t counter_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

enum class GroundTruth { Quadratic, PowerSum };
enum class NoiseKind { Additive, Multiplicative };

// A smooth ground-truth function plus a stochastic noise model.
// Quadratic: f(x) = x . x;  PowerSum: f(x) = (sum_i x_i)^power.
struct NoisyFunctionSpec {
  GroundTruth ground_truth = GroundTruth::Quadratic;
  int power = 6;  // exponent for PowerSum
  NoiseKind noise = NoiseKind::Multiplicative;
  double sigma = 1e-3;
  int dim = 1;

  double smooth_value(const std::vector<double>& x) const;
};

// One noisy evaluation.  Draws exactly one noise sample per call (also
// when sigma is zero, so downstream draws stay aligned).
double evaluate(const NoisyFunctionSpec& spec, const std::vector<double>& x,
                SeededRng& rng);

// Equally spaced points y0 + j*h*direction, j = 0..count-1.  The direction
// must be unit length (Euclidean, checked to 1e-12); h must be positive
// and count at least 2.
PointSet standard_points(const std::vector<double>& y0,
                         const std::vector<double>& direction, double h,
                         int count);

// The base point plus count-1 points drawn uniformly from the max-norm box
// of radius h around it.
PointSet arbitrary_points(const std::vector<double>& y0, double h, int count,
                          SeededRng& rng);

// Base point uniform in [-box, box]^n and an isotropic unit direction.
std::pair<std::vector<double>, std::vector<double>> random_base_and_direction(
    int n, double box, SeededRng& rng);

}  // namespace noisekit
