#include "noisekit/curve.hpp"

#include <cmath>
#include <stdexcept>

namespace noisekit {

std::vector<double> divided_differences(const std::vector<double>& samples) {
  if (samples.empty()) {
    throw std::invalid_argument("divided_differences requires at least 1 sample");
  }
  std::vector<double> work = samples;
  std::vector<double> coeffs(samples.size());
  coeffs[0] = work[0];
  for (std::size_t k = 1; k < samples.size(); ++k) {
    for (std::size_t j = 0; j + k < samples.size(); ++j) {
      work[j] = (work[j + 1] - work[j]) / static_cast<double>(k);
    }
    coeffs[k] = work[0];
  }
  return coeffs;
}

NewtonCurve newton_curve(const PointSet& points) {
  NewtonCurve curve;
  curve.dim = points.dim();
  curve.order = points.size() - 1;
  curve.coeffs.resize(curve.dim);
  std::vector<double> samples(points.size());
  for (int i = 0; i < curve.dim; ++i) {
    const double base = points.base()[i];
    for (int j = 0; j < points.size(); ++j) {
      samples[j] = points[j][i] - base;
    }
    curve.coeffs[i] = divided_differences(samples);
    curve.coeffs[i][0] += base;
  }
  return curve;
}

std::vector<double> eval_curve(const NewtonCurve& curve, double t) {
  std::vector<double> out(curve.dim);
  for (int i = 0; i < curve.dim; ++i) {
    const std::vector<double>& c = curve.coeffs[i];
    double acc = c[curve.order];
    for (int k = curve.order - 1; k >= 0; --k) {
      acc = c[k] + (t - k) * acc;
    }
    out[i] = acc;
  }
  return out;
}

namespace {

// Monomial coefficients of the Lagrange basis polynomial anchored at node j
// over the unit-spaced nodes 0..m.
std::vector<double> lagrange_basis_coeffs(int m, int j) {
  std::vector<double> coeffs{1.0};
  for (int node = 0; node <= m; ++node) {
    if (node == j) continue;
    // multiply by (t - node) / (j - node)
    const double denom = static_cast<double>(j - node);
    std::vector<double> next(coeffs.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] += coeffs[i] / denom;
      next[i] -= coeffs[i] * node / denom;
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

std::vector<double> differentiate(std::vector<double> coeffs, int times) {
  for (int rep = 0; rep < times; ++rep) {
    if (coeffs.size() <= 1) return {0.0};
    for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) {
      coeffs[i] = coeffs[i + 1] * static_cast<double>(i + 1);
    }
    coeffs.pop_back();
  }
  return coeffs;
}

double eval_poly(const std::vector<double>& coeffs, double t) {
  double acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = acc * t + coeffs[i];
  }
  return acc;
}

// Max of |p(t)| over [lo, hi]: dense grid then ternary refinement around
// the best grid point.
double max_abs_on_interval(const std::vector<double>& coeffs, double lo,
                           double hi, int grid_resolution) {
  const double step = (hi - lo) / grid_resolution;
  double best_t = lo;
  double best = std::fabs(eval_poly(coeffs, lo));
  for (int g = 1; g <= grid_resolution; ++g) {
    const double t = lo + g * step;
    const double v = std::fabs(eval_poly(coeffs, t));
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  double a = std::max(lo, best_t - step);
  double b = std::min(hi, best_t + step);
  for (int it = 0; it < 100; ++it) {
    const double t1 = a + (b - a) / 3.0;
    const double t2 = b - (b - a) / 3.0;
    if (std::fabs(eval_poly(coeffs, t1)) < std::fabs(eval_poly(coeffs, t2))) {
      a = t1;
    } else {
      b = t2;
    }
  }
  return std::max(best, std::fabs(eval_poly(coeffs, 0.5 * (a + b))));
}

}  // namespace

std::vector<double> lagrange_derivative_node_maxima(int m, int k,
                                                    int grid_resolution) {
  if (m < 0 || k < 0 || k > m) {
    throw std::domain_error("lagrange derivative order must satisfy 0 <= k <= m");
  }
  if (grid_resolution < 100) {
    throw std::domain_error("grid_resolution must be at least 100");
  }
  std::vector<double> maxima(m + 1);
  for (int j = 0; j <= m; ++j) {
    const std::vector<double> deriv = differentiate(lagrange_basis_coeffs(m, j), k);
    maxima[j] = max_abs_on_interval(deriv, 0.0, static_cast<double>(m),
                                    grid_resolution);
  }
  return maxima;
}

double lagrange_derivative_max(int m, int k, int grid_resolution) {
  double best = 0.0;
  for (double v : lagrange_derivative_node_maxima(m, k, grid_resolution)) {
    best = std::max(best, v);
  }
  return best;
}

DerivativeBound derivative_bound(const PointSet& points) {
  constexpr int kGridResolution = 2000;
  DerivativeBound bound;
  bound.h_radius = points.h_radius();
  const int m = points.size() - 1;
  bound.per_order.resize(m);
  for (int k = 1; k <= m; ++k) {
    double sum = 0.0;
    for (double v : lagrange_derivative_node_maxima(m, k, kGridResolution)) {
      sum += v;
    }
    bound.per_order[k - 1] = bound.h_radius * sum;
  }
  return bound;
}

}  // namespace noisekit
