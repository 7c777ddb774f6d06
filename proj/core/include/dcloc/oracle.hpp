#pragma once

// Brute-force reference minimizers for small instances. These are test
// instruments: exhaustive, deterministic, and slow.

#include <cstdint>

#include "dcloc/model.hpp"

namespace dcloc {

struct GridSpec {
  Vector lower;
  Vector upper;
  int points_per_axis = 101;
};

struct OracleResult {
  Vector best_x;
  double best_value = 0.0;
  std::int64_t evaluations = 0;
  double spacing = 0.0;  // largest axis step
};

inline constexpr std::int64_t kDefaultGridBudget = 10'000'000;

/// Evaluates f at the projection onto S of every grid point and keeps the
/// smallest value, ties going to the lexicographically smallest point.
/// Throws BudgetExceeded when n > 4 or the grid exceeds `budget` points, and
/// EmptyIntersection when no projected point falls inside the grid region.
OracleResult grid_search(const ProblemInstance& inst, const GridSpec& grid,
                         std::int64_t budget = kDefaultGridBudget);

/// Compass search from a feasible x0: poll +-radius along each axis (projected
/// onto S), move on improvement, halve the radius when no poll improves.
/// Never returns a value above f(x0).
OracleResult local_refine(const ProblemInstance& inst, const Vector& x0,
                          double radius, int rounds);

}  // namespace dcloc
