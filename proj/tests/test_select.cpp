#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "noisekit/curve.hpp"
#include "noisekit/models.hpp"
#include "noisekit/select.hpp"

using namespace noisekit;

namespace {

std::vector<std::vector<double>> random_pool(SeededRng& rng, int count, int n,
                                             const std::vector<double>& base,
                                             double radius) {
  std::vector<std::vector<double>> pool(count, std::vector<double>(n));
  for (auto& point : pool) {
    for (int i = 0; i < n; ++i) point[i] = base[i] + rng.uniform(-radius, radius);
  }
  return pool;
}

SelectionProblem random_problem(std::uint64_t stream, int n, int pool_size,
                                int slots, int reuse) {
  SeededRng rng(5150, stream);
  SelectionProblem problem;
  problem.base.resize(n);
  for (double& c : problem.base) c = rng.uniform(-2.0, 2.0);
  problem.pool = random_pool(rng, pool_size, n, problem.base, 1.0);
  problem.slots = slots;
  problem.reuse_budget = reuse;
  problem.box_radius = 1.0;
  return problem;
}

bool same_assignment(const std::vector<SlotAssignment>& a,
                     const std::vector<SlotAssignment>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].is_free() != b[j].is_free()) return false;
    if (!a[j].is_free() && a[j].pool_index != b[j].pool_index) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("a planted collinear subset wins over clutter") {
  const int n = 3;
  const double h = 0.01;
  const std::vector<double> base = {1.0, 2.0, -1.0};
  const std::vector<double> d = {0.6, -0.8, 0.0};
  SelectionProblem problem;
  problem.base = base;
  // pool entries 0..3: the planted line; 4..7: far-away clutter
  for (int j = 1; j <= 4; ++j) {
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) p[i] = base[i] + j * h * d[i];
    problem.pool.push_back(p);
  }
  SeededRng rng(5150, 99);
  for (const auto& p : random_pool(rng, 4, n, base, 0.5)) {
    problem.pool.push_back(p);
  }
  problem.slots = 4;
  problem.reuse_budget = 4;
  problem.box_radius = h;

  std::vector<SlotAssignment> planted(4);
  for (int j = 0; j < 4; ++j) planted[j].pool_index = j;
  const double planted_objective = selection_objective(problem, planted);
  // along the line every coefficient of order >= 2 vanishes
  CHECK(planted_objective == doctest::Approx(h * 0.8).epsilon(1e-12));

  const SelectionSolution solution = solve_selection(problem);
  CHECK(solution.optimal);
  CHECK(solution.objective == doctest::Approx(planted_objective).epsilon(1e-12));
  CHECK(same_assignment(solution.assignment, planted));
}

TEST_CASE("a single slot picks the nearest pool point") {
  SelectionProblem problem;
  problem.base = {0.0, 0.0};
  problem.pool = {{0.9, 0.3}, {0.2, -0.4}, {-0.1, 0.05}, {0.5, 0.5}};
  problem.slots = 1;
  problem.reuse_budget = 1;
  problem.box_radius = 1.0;
  const SelectionSolution solution = solve_selection(problem);
  REQUIRE(solution.assignment.size() == 1);
  CHECK(solution.assignment[0].pool_index == 2);
  CHECK(solution.objective == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(solution.optimal);
}

TEST_CASE("pure reuse matches exhaustive enumeration") {
  const SelectionProblem problem = random_problem(1, 2, 6, 3, 3);
  const SelectionSolution fast = solve_selection(problem);
  const SelectionSolution brute = brute_force_selection(problem);
  CHECK(brute.nodes_visited == 120);  // 6 * 5 * 4 ordered subsets
  CHECK(fast.objective == brute.objective);
  CHECK(same_assignment(fast.assignment, brute.assignment));
}

TEST_CASE("zero reuse budget collapses to the base point") {
  SelectionProblem problem = random_problem(2, 2, 5, 3, 0);
  problem.box_radius = 0.1;
  const SelectionSolution solution = solve_selection(problem);
  CHECK(solution.objective == 0.0);
  REQUIRE(solution.assignment.size() == 3);
  for (const SlotAssignment& slot : solution.assignment) {
    CHECK(slot.is_free());
    for (double c : slot.free_offset) CHECK(std::fabs(c) <= 1e-12);
  }
  REQUIRE(!solution.warnings.empty());
  CHECK(solution.warnings.front().find("reuse budget is 0") !=
        std::string::npos);
}

TEST_CASE("free placements with every slot free are trivial") {
  const std::vector<std::optional<std::vector<double>>> slots(3);
  const FreePointResult result = free_point_subproblem(2, slots, 0.5);
  CHECK(result.objective == 0.0);
  REQUIRE(result.free_offsets.size() == 3);
  for (const auto& offset : result.free_offsets) {
    REQUIRE(offset.size() == 2);
    for (double c : offset) CHECK(std::fabs(c) <= 1e-12);
  }
  CHECK_THROWS_AS(
      free_point_subproblem(
          2, {std::optional<std::vector<double>>({0.1, 0.1})}, 0.5),
      std::domain_error);
}

TEST_CASE("one fixed coordinate pins the free-slot optimum") {
  // slot 1 fixed at 3h leaves the order-1 coefficient at 3h no matter where
  // the free slot 2 goes; the optimum drives the order-2 coefficient below
  // that level.
  const double h = 0.25;
  std::vector<std::optional<std::vector<double>>> slots(2);
  slots[0] = std::vector<double>{3.0 * h};
  const FreePointResult exact = free_point_subproblem(1, slots, h);
  CHECK(exact.objective == doctest::Approx(3.0 * h).epsilon(1e-9));

  double grid_best = 1e300;
  for (int g = 0; g <= 10000; ++g) {
    const double phi = -h + 2.0 * h * g / 10000.0;
    const double dd2 = (phi - 6.0 * h) / 2.0;
    grid_best = std::min(grid_best, std::max(3.0 * h, std::fabs(dd2)));
  }
  CHECK(std::fabs(exact.objective - grid_best) <= 1e-3 * h);
}

TEST_CASE("a free slot extends a partial line") {
  // Two fixed slots along a line. Continuing the line at 0.9h cancels every
  // coefficient beyond order 1, so the optimum equals the order-1 term 0.3h.
  // The optimum is attained on the whole interval [-0.9h, h] (the order-3
  // coefficient only has to stay below 0.3h), so check that the returned
  // placement attains it rather than pinning one vertex of that face.
  const double h = 0.4;
  std::vector<std::optional<std::vector<double>>> slots(3);
  slots[0] = std::vector<double>{0.3 * h};
  slots[1] = std::vector<double>{0.6 * h};
  const FreePointResult result = free_point_subproblem(1, slots, h);
  CHECK(result.objective == doctest::Approx(0.3 * h).epsilon(1e-9));
  REQUIRE(result.free_offsets.size() == 1);
  const double phi = result.free_offsets[0][0];
  CHECK(std::fabs(phi) <= h);
  const std::vector<double> dd =
      divided_differences({0.0, 0.3 * h, 0.6 * h, phi});
  double attained = 0.0;
  for (std::size_t k = 1; k < dd.size(); ++k) {
    attained = std::max(attained, std::fabs(dd[k]));
  }
  CHECK(attained <= result.objective * (1.0 + 1e-9));

  // the line extension itself is one of the optima
  const std::vector<double> line_dd =
      divided_differences({0.0, 0.3 * h, 0.6 * h, 0.9 * h});
  CHECK(std::fabs(line_dd[2]) <= 1e-15);
  CHECK(std::fabs(line_dd[3]) <= 1e-15);
}

TEST_CASE("objective recomputation validates its input") {
  SelectionProblem problem = random_problem(3, 2, 4, 2, 2);
  std::vector<SlotAssignment> wrong_size(1);
  wrong_size[0].pool_index = 0;
  CHECK_THROWS_AS(selection_objective(problem, wrong_size),
                  std::invalid_argument);

  std::vector<SlotAssignment> duplicate(2);
  duplicate[0].pool_index = 1;
  duplicate[1].pool_index = 1;
  CHECK_THROWS_AS(selection_objective(problem, duplicate),
                  std::invalid_argument);

  std::vector<SlotAssignment> out_of_range(2);
  out_of_range[0].pool_index = 0;
  out_of_range[1].pool_index = 9;
  CHECK_THROWS_AS(selection_objective(problem, out_of_range),
                  std::invalid_argument);

  std::vector<SlotAssignment> bad_free(2);
  bad_free[0].pool_index = 0;
  bad_free[1].free_offset = {0.1};  // wrong dimension
  CHECK_THROWS_AS(selection_objective(problem, bad_free),
                  std::invalid_argument);
}

TEST_CASE("objective of hand-sized assignments") {
  SelectionProblem problem;
  problem.base = {0.0};
  problem.pool = {{1.0}, {4.0}};
  problem.slots = 2;
  problem.reuse_budget = 2;
  problem.box_radius = 1.0;
  std::vector<SlotAssignment> assignment(2);
  assignment[0].pool_index = 0;
  assignment[1].pool_index = 1;
  // offsets 0,1,4 over nodes 0,1,2: coefficients 1 and 1
  CHECK(selection_objective(problem, assignment) ==
        doctest::Approx(1.0).epsilon(1e-15));
  std::swap(assignment[0].pool_index, assignment[1].pool_index);
  // offsets 0,4,1: order-1 coefficient 4 dominates
  CHECK(selection_objective(problem, assignment) ==
        doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("invalid problems are rejected") {
  SelectionProblem problem = random_problem(4, 2, 5, 3, 3);

  SelectionProblem bad = problem;
  bad.reuse_budget = 4;  // exceeds slot count
  CHECK_THROWS_AS(solve_selection(bad), std::invalid_argument);

  bad = problem;
  bad.slots = 6;
  bad.reuse_budget = 6;  // exceeds pool size
  CHECK_THROWS_AS(solve_selection(bad), std::invalid_argument);

  bad = problem;
  bad.reuse_budget = 2;
  bad.box_radius = 0.0;  // free slot with no box
  CHECK_THROWS_AS(solve_selection(bad), std::invalid_argument);

  bad = problem;
  bad.slots = 0;
  bad.reuse_budget = 0;
  CHECK_THROWS_AS(solve_selection(bad), std::invalid_argument);

  bad = problem;
  bad.base.clear();
  CHECK_THROWS_AS(solve_selection(bad), std::invalid_argument);

  bad = problem;
  bad.pool[2].push_back(0.0);  // ragged pool
  CHECK_THROWS_AS(solve_selection(bad), std::invalid_argument);

  bad = problem;
  bad.limits.max_nodes = 0;
  CHECK_THROWS_AS(solve_selection(bad), std::invalid_argument);
}

TEST_CASE("the exhaustive solver refuses oversized instances") {
  // 13!/(13-6)! = 1235520 ordered subsets crosses the refusal threshold
  SelectionProblem big = random_problem(5, 2, 13, 6, 6);
  CHECK_THROWS_AS(brute_force_selection(big), std::invalid_argument);

  SelectionProblem many_free = random_problem(6, 2, 6, 4, 1);
  CHECK_THROWS_AS(brute_force_selection(many_free), std::invalid_argument);
}

TEST_CASE("slot order changes the objective") {
  const SelectionProblem problem = random_problem(7, 2, 3, 3, 3);
  std::vector<int> order = {0, 1, 2};
  std::vector<double> objectives;
  do {
    std::vector<SlotAssignment> assignment(3);
    for (int j = 0; j < 3; ++j) assignment[j].pool_index = order[j];
    objectives.push_back(selection_objective(problem, assignment));
  } while (std::next_permutation(order.begin(), order.end()));
  std::sort(objectives.begin(), objectives.end());
  CHECK(objectives.front() < objectives.back());
}

TEST_CASE("loosening the reuse budget never hurts") {
  SelectionProblem problem = random_problem(8, 2, 6, 4, 4);
  problem.box_radius = 0.75;
  double previous = 1e300;
  for (int reuse = 4; reuse >= 1; --reuse) {
    problem.reuse_budget = reuse;
    const SelectionSolution solution = solve_selection(problem);
    CHECK(solution.optimal);
    CHECK(solution.objective <= previous * (1.0 + 1e-12));
    previous = solution.objective;
    int pool_slots = 0;
    for (const auto& slot : solution.assignment) {
      pool_slots += slot.is_free() ? 0 : 1;
    }
    CHECK(pool_slots == reuse);
  }
}

TEST_CASE("search agrees with enumeration on pure-reuse instances") {
  for (std::uint64_t round = 0; round < 25; ++round) {
    SeededRng pick(5150, 300 + round);
    const int n = 1 + static_cast<int>(pick.next_u64() % 3);
    const int slots = 2 + static_cast<int>(pick.next_u64() % 3);
    const int pool_size =
        slots + static_cast<int>(pick.next_u64() % (8 - slots));
    const SelectionProblem problem =
        random_problem(400 + round, n, pool_size, slots, slots);
    const SelectionSolution fast = solve_selection(problem);
    const SelectionSolution brute = brute_force_selection(problem);
    CAPTURE(round);
    CHECK(fast.optimal);
    CHECK(fast.objective == brute.objective);
    CHECK(same_assignment(fast.assignment, brute.assignment));
  }
}

TEST_CASE("search agrees with the gridded oracle on one-free-slot instances") {
  for (std::uint64_t round = 0; round < 10; ++round) {
    SeededRng pick(5150, 500 + round);
    const int n = 1 + static_cast<int>(pick.next_u64() % 2);
    const int slots = 2 + static_cast<int>(pick.next_u64() % 2);
    const SelectionProblem problem =
        random_problem(600 + round, n, 5, slots, slots - 1);
    const SelectionSolution fast = solve_selection(problem);
    const SelectionSolution brute = brute_force_selection(problem);
    CAPTURE(round);
    CHECK(fast.optimal);
    // the grid oracle can only overshoot the true optimum
    CHECK(fast.objective <= brute.objective + 1e-12);
    CHECK(brute.objective - fast.objective <= 1e-3 * problem.box_radius);
  }
}

TEST_CASE("reported objectives recompute from the assignment") {
  for (std::uint64_t round = 0; round < 10; ++round) {
    const int reuse = 2 + static_cast<int>(round % 3);
    SelectionProblem problem = random_problem(700 + round, 3, 8, 4, reuse);
    problem.box_radius = 0.6;
    const SelectionSolution solution = solve_selection(problem);
    const double recomputed =
        selection_objective(problem, solution.assignment);
    CHECK(solution.objective ==
          doctest::Approx(recomputed).epsilon(1e-9));
    for (const SlotAssignment& slot : solution.assignment) {
      if (slot.is_free()) {
        for (double c : slot.free_offset) {
          CHECK(std::fabs(c) <= problem.box_radius * (1.0 + 1e-12));
        }
      }
    }
  }
}

TEST_CASE("an exhausted node budget returns the incumbent honestly") {
  SelectionProblem problem = random_problem(9, 2, 8, 4, 4);
  problem.limits.max_nodes = 1;
  const SelectionSolution solution = solve_selection(problem);
  CHECK(!solution.optimal);
  REQUIRE(!solution.warnings.empty());
  CHECK(solution.warnings.back().find("budget") != std::string::npos);
  CHECK(selection_objective(problem, solution.assignment) ==
        doctest::Approx(solution.objective).epsilon(1e-9));
}

TEST_CASE("pool-scale instances solve quickly") {
  SeededRng rng(5150, 900);
  SelectionProblem problem;
  problem.base.assign(6, 0.0);
  for (double& c : problem.base) c = rng.uniform(-10.0, 10.0);
  problem.pool = random_pool(rng, 50, 6, problem.base, 1e-6);
  problem.slots = 6;
  problem.reuse_budget = 6;
  problem.box_radius = 1e-6;
  const SelectionSolution solution = solve_selection(problem);
  CHECK(solution.optimal);
  CHECK(solution.wall_seconds < 5.0);

  problem.reuse_budget = 3;
  problem.limits.max_nodes = 8000;
  const SelectionSolution mixed = solve_selection(problem);
  CHECK(mixed.objective <= solution.objective * (1.0 + 1e-12));
}
