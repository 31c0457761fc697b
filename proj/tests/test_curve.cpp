#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "noisekit/curve.hpp"
#include "noisekit/diff_table.hpp"
#include "noisekit/models.hpp"
#include "noisekit/point_set.hpp"

using namespace noisekit;

namespace {

PointSet random_points(std::uint64_t stream, int n, int count, double scale) {
  SeededRng rng(415, stream);
  std::vector<std::vector<double>> points(count, std::vector<double>(n));
  for (auto& point : points) {
    for (double& c : point) c = rng.uniform(-scale, scale);
  }
  return PointSet(std::move(points));
}

// Evaluation through the Lagrange basis, an independent route to the same
// interpolant.
double lagrange_eval(const std::vector<double>& samples, double t) {
  const int m = static_cast<int>(samples.size()) - 1;
  double value = 0.0;
  for (int j = 0; j <= m; ++j) {
    double basis = 1.0;
    for (int l = 0; l <= m; ++l) {
      if (l != j) basis *= (t - l) / (j - l);
    }
    value += samples[j] * basis;
  }
  return value;
}

// Monomial coefficients of the interpolant of samples at nodes 0..m,
// built by expanding the Newton basis product terms.
std::vector<double> monomial_coefficients(const std::vector<double>& dd) {
  const int m = static_cast<int>(dd.size()) - 1;
  std::vector<double> poly(m + 1, 0.0);
  std::vector<double> basis(m + 1, 0.0);  // coefficients of w_j(t)
  basis[0] = 1.0;
  int degree = 0;
  for (int j = 0; j <= m; ++j) {
    for (int d = 0; d <= degree; ++d) poly[d] += dd[j] * basis[d];
    // multiply the basis by (t - j) for the next round
    for (int d = degree + 1; d >= 1; --d) {
      basis[d] = basis[d - 1] - j * basis[d];
    }
    basis[0] *= -static_cast<double>(j);
    ++degree;
  }
  return poly;
}

std::vector<double> differentiate(std::vector<double> poly, int k) {
  for (int round = 0; round < k; ++round) {
    for (std::size_t d = 1; d < poly.size(); ++d) {
      poly[d - 1] = poly[d] * static_cast<double>(d);
    }
    poly.pop_back();
    if (poly.empty()) return {0.0};
  }
  return poly;
}

double eval_poly(const std::vector<double>& poly, double t) {
  double value = 0.0;
  for (std::size_t d = poly.size(); d-- > 0;) value = value * t + poly[d];
  return value;
}

}  // namespace

TEST_CASE("divided differences of squares") {
  CHECK(divided_differences({0.0, 1.0, 4.0}) ==
        std::vector<double>{0.0, 1.0, 1.0});
}

TEST_CASE("divided differences of constants vanish beyond order zero") {
  CHECK(divided_differences({2.5, 2.5, 2.5, 2.5}) ==
        std::vector<double>{2.5, 0.0, 0.0, 0.0});
  CHECK_THROWS_AS(divided_differences({}), std::invalid_argument);
}

TEST_CASE("divided differences equal leading table entries over factorials") {
  SeededRng rng(415, 3);
  std::vector<double> samples(6);
  for (double& s : samples) s = rng.uniform(-2.0, 2.0);
  const std::vector<double> dd = divided_differences(samples);
  const DifferenceTable table = build_table(samples);
  double factorial = 1.0;
  CHECK(dd[0] == samples[0]);
  for (int k = 1; k <= 5; ++k) {
    factorial *= k;
    CHECK(dd[k] ==
          doctest::Approx(table.column(k)[0] / factorial).epsilon(1e-12));
  }
}

TEST_CASE("collinear equally spaced points produce an affine curve") {
  const int n = 3;
  const double h = 0.37;
  const std::vector<double> y0 = {1.0, -2.0, 0.5};
  const std::vector<double> d = {0.6, 0.8, 0.0};
  std::vector<std::vector<double>> points;
  for (int j = 0; j < 5; ++j) {
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) p[i] = y0[i] + j * h * d[i];
    points.push_back(p);
  }
  const NewtonCurve curve = newton_curve(PointSet(points));
  for (int i = 0; i < n; ++i) {
    CHECK(curve.coeffs[i][0] == doctest::Approx(y0[i]).epsilon(1e-15));
    CHECK(curve.coeffs[i][1] == doctest::Approx(h * d[i]).epsilon(1e-13));
    for (int k = 2; k <= curve.order; ++k) {
      CHECK(std::fabs(curve.coeffs[i][k]) <= 1e-12);
    }
  }
  const std::vector<double> mid = eval_curve(curve, 2.5);
  for (int i = 0; i < n; ++i) {
    CHECK(mid[i] == doctest::Approx(y0[i] + 2.5 * h * d[i]).epsilon(1e-12));
  }
}

TEST_CASE("single-coordinate quadratic data") {
  const PointSet points({{0.0}, {1.0}, {4.0}, {9.0}});
  const NewtonCurve curve = newton_curve(points);
  REQUIRE(curve.dim == 1);
  REQUIRE(curve.order == 3);
  CHECK(curve.coeffs[0] == std::vector<double>{0.0, 1.0, 1.0, 0.0});
  CHECK(eval_curve(curve, 1.5)[0] == doctest::Approx(2.25).epsilon(1e-14));
  CHECK(eval_curve(curve, 0.0)[0] == 0.0);
}

TEST_CASE("curve reproduces its nodes") {
  SeededRng pick(415, 9);
  for (int round = 0; round < 200; ++round) {
    const int n = 1 + static_cast<int>(pick.next_u64() % 20);
    const int count = 2 + static_cast<int>(pick.next_u64() % 12);
    const PointSet points = random_points(1000 + round, n, count, 5.0);
    const NewtonCurve curve = newton_curve(points);
    for (int j = 0; j < count; ++j) {
      const std::vector<double> value = eval_curve(curve, j);
      for (int i = 0; i < n; ++i) {
        CHECK(std::fabs(value[i] - points[j][i]) <= 1e-10 * 5.0);
      }
    }
  }
}

TEST_CASE("newton and lagrange forms agree between nodes") {
  const PointSet points = random_points(77, 4, 7, 3.0);
  const NewtonCurve curve = newton_curve(points);
  SeededRng rng(415, 13);
  for (int round = 0; round < 100; ++round) {
    const double t = rng.uniform(0.0, 6.0);
    const std::vector<double> newton = eval_curve(curve, t);
    for (int i = 0; i < 4; ++i) {
      std::vector<double> samples(7);
      for (int j = 0; j < 7; ++j) samples[j] = points[j][i];
      CHECK(newton[i] ==
            doctest::Approx(lagrange_eval(samples, t)).epsilon(1e-9));
    }
  }
}

TEST_CASE("basis derivative maxima for the linear case") {
  CHECK(lagrange_derivative_max(1, 0, 1000) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(lagrange_derivative_max(1, 1, 1000) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("basis derivative maxima stabilize under grid refinement") {
  const double coarse = lagrange_derivative_max(6, 2, 1000);
  const double fine = lagrange_derivative_max(6, 2, 10000);
  CHECK(std::fabs(coarse - fine) <= 0.01 * fine);
  const auto per_node = lagrange_derivative_node_maxima(6, 2, 1000);
  REQUIRE(per_node.size() == 7);
  double best = 0.0;
  for (double v : per_node) best = std::max(best, v);
  CHECK(best == doctest::Approx(coarse).epsilon(1e-15));
  CHECK_THROWS_AS(lagrange_derivative_max(3, 4, 1000), std::domain_error);
  CHECK_THROWS_AS(lagrange_derivative_max(3, 1, 50), std::domain_error);
}

TEST_CASE("derivative bounds scale linearly about the base point") {
  const PointSet points = random_points(21, 3, 5, 2.0);
  std::vector<std::vector<double>> doubled = points.points();
  for (auto& p : doubled) {
    for (int i = 0; i < 3; ++i) {
      p[i] = points.base()[i] + 2.0 * (p[i] - points.base()[i]);
    }
  }
  const DerivativeBound original = derivative_bound(points);
  const DerivativeBound scaled = derivative_bound(PointSet(doubled));
  REQUIRE(original.per_order.size() == 4);
  for (std::size_t k = 0; k < original.per_order.size(); ++k) {
    CHECK(original.per_order[k] >= 0.0);
    CHECK(scaled.per_order[k] ==
          doctest::Approx(2.0 * original.per_order[k]).epsilon(1e-12));
  }
}

TEST_CASE("derivative bounds dominate the true curve derivatives") {
  const PointSet points = random_points(33, 3, 5, 1.5);
  const NewtonCurve curve = newton_curve(points);
  const DerivativeBound bound = derivative_bound(points);
  for (int k = 1; k <= 4; ++k) {
    double observed = 0.0;
    for (int i = 0; i < 3; ++i) {
      const std::vector<double> poly = monomial_coefficients(curve.coeffs[i]);
      const std::vector<double> derivative = differentiate(poly, k);
      for (int g = 0; g <= 2000; ++g) {
        const double t = 4.0 * g / 2000.0;
        observed = std::max(observed, std::fabs(eval_poly(derivative, t)));
      }
    }
    CHECK(bound.per_order[k - 1] >= observed * (1.0 - 1e-9));
  }
}

TEST_CASE("monomial helper agrees with curve evaluation") {
  const PointSet points = random_points(41, 2, 6, 1.0);
  const NewtonCurve curve = newton_curve(points);
  for (int i = 0; i < 2; ++i) {
    const std::vector<double> poly = monomial_coefficients(curve.coeffs[i]);
    for (double t : {0.3, 1.7, 4.9}) {
      CHECK(eval_poly(poly, t) ==
            doctest::Approx(eval_curve(curve, t)[i]).epsilon(1e-10));
    }
  }
}
