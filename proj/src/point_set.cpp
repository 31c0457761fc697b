#include "noisekit/point_set.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace noisekit {

PointSet::PointSet(std::vector<std::vector<double>> points)
    : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw std::invalid_argument("PointSet requires at least 2 points");
  }
  dim_ = static_cast<int>(points_.front().size());
  if (dim_ < 1) {
    throw std::invalid_argument("PointSet requires dimension >= 1");
  }
  for (const auto& p : points_) {
    if (static_cast<int>(p.size()) != dim_) {
      throw std::invalid_argument("PointSet points have inconsistent dimensions");
    }
  }
}

double PointSet::h_consecutive() const {
  double worst = 0.0;
  for (std::size_t j = 0; j + 1 < points_.size(); ++j) {
    double sq = 0.0;
    for (int i = 0; i < dim_; ++i) {
      const double d = points_[j + 1][i] - points_[j][i];
      sq += d * d;
    }
    worst = std::max(worst, std::sqrt(sq));
  }
  return worst;
}

double PointSet::h_radius() const {
  double worst = 0.0;
  for (std::size_t j = 1; j < points_.size(); ++j) {
    for (int i = 0; i < dim_; ++i) {
      worst = std::max(worst, std::fabs(points_[j][i] - points_[0][i]));
    }
  }
  return worst;
}

}  // namespace noisekit
