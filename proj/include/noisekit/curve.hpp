#pragma once

#include <vector>

#include "noisekit/point_set.hpp"

namespace noisekit {

// Divided differences of samples taken at the unit-spaced nodes
// t = 0, 1, ..., m.  Returns the coefficients [g0], [g0,g1], ...,
// [g0,...,gm] of the Newton form.  Throws std::invalid_argument on
// empty input.
std::vector<double> divided_differences(const std::vector<double>& samples);

// Polynomial curve through a point set, one Newton-form polynomial per
// coordinate over the nodes t = 0..m.  coeffs[i][0] equals the base
// coordinate, so eval at t = j reproduces point j.
struct NewtonCurve {
  int dim = 0;
  int order = 0;  // polynomial degree bound m = N - 1
  std::vector<std::vector<double>> coeffs;
};

// Interpolates the points of `points` with one polynomial per coordinate.
// Internally works on coordinates translated by the base point, which
// keeps the divided differences well conditioned, and restores the base
// in the constant coefficient.
NewtonCurve newton_curve(const PointSet& points);

// Evaluates the curve at parameter t with a Horner-style sweep over the
// Newton basis.
std::vector<double> eval_curve(const NewtonCurve& curve, double t);

// For each interpolation node j, the maximum over t in [0, m] of the
// absolute k-th derivative of the Lagrange basis polynomial anchored at
// node j (unit-spaced nodes 0..m).  Maxima are located by dense grid
// sampling at grid_resolution points followed by local refinement.
// Requires 0 <= k <= m and grid_resolution >= 100.
std::vector<double> lagrange_derivative_node_maxima(int m, int k,
                                                    int grid_resolution);

// Maximum over all nodes of lagrange_derivative_node_maxima.
double lagrange_derivative_max(int m, int k, int grid_resolution);

// Uniform bound on the k-th parameter derivative of the interpolating
// curve of a point set: per_order[k-1] bounds max_{i,t} |p_i^(k)(t)| via
// h_radius * sum_j max_t |L_j^(k)(t)|.
struct DerivativeBound {
  std::vector<double> per_order;  // orders 1..m
  double h_radius = 0.0;
};

DerivativeBound derivative_bound(const PointSet& points);

}  // namespace noisekit
