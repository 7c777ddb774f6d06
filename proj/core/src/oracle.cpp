#include "dcloc/oracle.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <vector>

#include "dcloc/dca.hpp"
#include "dcloc/errors.hpp"

namespace dcloc {
namespace {

bool better(double value, const Vector& x, double best_value, const Vector& best_x) {
  return value < best_value ||
         (value == best_value && lexicographically_less(x, best_x));
}

}  // namespace

OracleResult grid_search(const ProblemInstance& inst, const GridSpec& grid,
                         std::int64_t budget) {
  const int n = inst.dimension;
  if (grid.lower.size() != n) throw DimensionMismatch(n, grid.lower.size());
  if (grid.upper.size() != n) throw DimensionMismatch(n, grid.upper.size());
  if (grid.points_per_axis < 2 || !(grid.lower.array() < grid.upper.array()).all()) {
    throw PreconditionViolated("grid: need lower < upper and at least 2 points per axis");
  }
  if (n > 4) throw BudgetExceeded("grid search is limited to dimension 4");
  const double total = std::pow(static_cast<double>(grid.points_per_axis), n);
  if (total > static_cast<double>(budget)) {
    std::ostringstream msg;
    msg << "grid of " << std::fixed << std::setprecision(0) << total
        << " points exceeds budget " << budget;
    throw BudgetExceeded(msg.str());
  }

  const Vector extent = grid.upper - grid.lower;
  const double steps = grid.points_per_axis - 1;
  OracleResult out;
  out.spacing = extent.maxCoeff() / steps;
  out.best_value = kInf;
  bool any_inside = false;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  Vector p(n);
  while (true) {
    for (int k = 0; k < n; ++k) p[k] = grid.lower[k] + extent[k] * idx[k] / steps;
    const Vector q = project(inst.constraint, p);
    if (!any_inside) {
      const double tol = default_tolerance(q);
      any_inside = ((q.array() >= grid.lower.array() - tol) &&
                    (q.array() <= grid.upper.array() + tol))
                       .all();
    }
    const double value = evaluate_objective(inst, q);
    ++out.evaluations;
    if (out.evaluations == 1 || better(value, q, out.best_value, out.best_x)) {
      out.best_value = value;
      out.best_x = q;
    }
    int k = 0;
    while (k < n && ++idx[k] == grid.points_per_axis) idx[k++] = 0;
    if (k == n) break;
  }
  if (!any_inside) {
    throw EmptyIntersection("the constraint set misses the grid region");
  }
  return out;
}

OracleResult local_refine(const ProblemInstance& inst, const Vector& x0,
                          double radius, int rounds) {
  const int n = inst.dimension;
  if (x0.size() != n) throw DimensionMismatch(n, x0.size());
  OracleResult out;
  out.best_x = x0;
  out.best_value = evaluate_objective(inst, x0);
  out.evaluations = 1;
  double r = radius;
  for (int round = 0; round < rounds; ++round) {
    bool improved = true;
    // f may be unbounded below on an unbounded S; cap the moves per round.
    for (int moves = 0; improved && moves < 100'000; ++moves) {
      improved = false;
      for (int k = 0; k < n; ++k) {
        for (double sign : {-1.0, 1.0}) {
          Vector cand = out.best_x;
          cand[k] += sign * r;
          cand = project(inst.constraint, cand);
          const double value = evaluate_objective(inst, cand);
          ++out.evaluations;
          if (value < out.best_value) {
            out.best_value = value;
            out.best_x = std::move(cand);
            improved = true;
          }
        }
      }
    }
    r *= 0.5;
  }
  out.spacing = 2.0 * r;
  return out;
}

}  // namespace dcloc
