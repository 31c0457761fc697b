#pragma once

#include <vector>

namespace noisekit {

// An ordered list of evaluation points y^0, y^1, ..., y^{N-1} in R^n.
// The first point is the base point.  Instances are immutable after
// construction, so they can be shared freely across threads.
class PointSet {
 public:
  // Throws std::invalid_argument if fewer than 2 points are given, if the
  // points have inconsistent dimensions, or if the dimension is zero.
  explicit PointSet(std::vector<std::vector<double>> points);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(points_.size()); }

  const std::vector<double>& base() const { return points_.front(); }
  const std::vector<double>& operator[](int j) const { return points_[j]; }
  const std::vector<std::vector<double>>& points() const { return points_; }

  // Largest Euclidean gap between consecutive points, max_j ||y^{j+1} - y^j||_2.
  // Derived from the points on every call.
  double h_consecutive() const;

  // Largest max-norm distance from the base point, max_j ||y^j - y^0||_inf.
  // Derived from the points on every call.
  double h_radius() const;

 private:
  std::vector<std::vector<double>> points_;
  int dim_;
};

}  // namespace noisekit
