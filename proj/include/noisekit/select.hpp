#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace noisekit {

struct SearchLimits {
  std::int64_t max_nodes = 10'000'000;
  double max_seconds = 10.0;
};

// Choose points for the slots 1..m of a difference table whose slot 0 is
// the base point.  Exactly reuse_budget slots must take distinct points
// from the pool; the remaining slots are "free" and may be placed anywhere
// in the max-norm box of radius box_radius around the base.  The objective
// is the largest absolute divided difference, over all coordinates and all
// orders 1..m, of the resulting point sequence (coordinates translated so
// the base sits at the origin).
struct SelectionProblem {
  std::vector<double> base;
  std::vector<std::vector<double>> pool;
  int slots = 0;         // m
  int reuse_budget = 0;  // R
  double box_radius = 0.0;
  SearchLimits limits;
};

struct SlotAssignment {
  int pool_index = -1;              // -1 marks a free slot
  std::vector<double> free_offset;  // offset from the base, free slots only

  bool is_free() const { return pool_index < 0; }
};

struct SelectionSolution {
  std::vector<SlotAssignment> assignment;  // slots 1..m in order
  double objective = 0.0;
  bool optimal = false;
  std::int64_t nodes_visited = 0;
  double wall_seconds = 0.0;
  std::vector<std::string> warnings;
};

// Objective of a complete assignment, recomputed from scratch through the
// divided-difference triangle.
double selection_objective(const SelectionProblem& problem,
                           const std::vector<SlotAssignment>& assignment);

// Exact depth-first branch-and-bound.  Slots are assigned in order; pure
// reuse prefixes prune on their exact partial objective, prefixes holding
// free slots prune on the exact min-max value of the orders the prefix
// already determines (free coordinates optimized, undetermined orders
// dropped).  Among equal objectives the lexicographically smallest slot
// sequence wins, with pool indices ordered before free markers.  When the
// node or time budget runs out the best incumbent is returned with
// optimal = false.
SelectionSolution solve_selection(const SelectionProblem& problem);

struct FreePointResult {
  std::vector<std::vector<double>> free_offsets;  // per free slot, slot order
  double objective = 0.0;
};

// Optimal placement of the free slots when every other slot is fixed.
// slots[j] holds the fixed offset (relative to the base) of slot j+1, or
// nullopt for a free slot.  The problem separates per coordinate into a
// min-max linear program over the box, solved exactly by a small dense
// simplex.  Throws std::domain_error when no slot is free.
FreePointResult free_point_subproblem(
    int dim, const std::vector<std::optional<std::vector<double>>>& slots,
    double box_radius);

// Exhaustive reference solver: enumerates every ordered pool subset and
// every free-slot pattern, placing free points by dense grid search.
// Requires reuse_budget == slots or at most 2 free slots, and refuses
// instances with more than 10^6 ordered subsets.
SelectionSolution brute_force_selection(const SelectionProblem& problem);

}  // namespace noisekit
