#pragma once

// Structure of the unconstrained one-attraction, one-repulsion problem
//   min  f(x) = alpha d(x; Omega) - beta d(x; Theta),   alpha >= beta > 0,
// and its companion maximization  max { d(x; Theta) : x in Omega }.

#include <optional>
#include <string_view>
#include <vector>

#include "dcloc/geometry.hpp"
#include "dcloc/model.hpp"

namespace dcloc {

struct SpecialInstance {
  ConvexSet omega;
  ConvexSet theta;
  double alpha = 1.0;
  double beta = 1.0;
};

/// Throws PreconditionViolated unless alpha >= beta > 0 and dimensions agree.
void validate(const SpecialInstance& inst);

double special_objective(const SpecialInstance& inst, const Vector& x);

/// The same problem as a general instance with an unconstrained domain.
ProblemInstance to_problem(const SpecialInstance& inst);

/// One attraction and one repulsion, otherwise nullopt. The constraint set is
/// dropped.
std::optional<SpecialInstance> as_special(const ProblemInstance& inst);

enum class Decision { kNo, kYes, kUndecided };

std::string_view to_string(Decision d);

struct PointClass {
  Decision stationary = Decision::kUndecided;  // dh(x) inside dg(x)
  Decision critical = Decision::kUndecided;    // dh(x) meets dg(x)
  std::optional<Vector> witness;               // common element when critical
};

PointClass classify_point(const SpecialInstance& inst, const Vector& x,
                          double tol = 1e-9);

struct ReducedMax {
  std::vector<Vector> points;
  bool exact = true;        // false when found by grid search
  bool undecided = false;   // maximizers form a whole sphere; none listed
  bool whole_set = false;   // the maximum is 0, every point of Omega attains it
  double resolution = 0.0;  // grid spacing when !exact
};

/// Maximizers of d(.; Theta) over a bounded Omega. Boxes are scanned at their
/// vertices, balls use the antipodal point in closed form where one exists and
/// a projected grid (spacing `grid_resolution` times the diameter) otherwise.
/// Throws UnboundedDomain for unbounded Omega.
ReducedMax solve_reduced_max(const SpecialInstance& inst,
                             double grid_resolution = 1e-3);

struct SolutionRay {
  Vector base;
  Vector direction;

  Vector at(double t) const { return base + t * direction; }
};

/// For alpha == beta and Omega not inside Theta: the ray base + t (base -
/// P(base; Theta)), t >= 0, for each maximizer. Throws PreconditionViolated
/// otherwise.
std::vector<SolutionRay> solution_rays(const SpecialInstance& inst,
                                       const std::vector<Vector>& maximizers);

struct SpecialSolution {
  enum class Mode {
    kReducedEquivalent,  // alpha > beta: solutions are exactly the maximizers
    kRayFamily,          // alpha == beta: union of rays from the maximizers
    kReducedSubset,      // alpha == beta, Omega inside Theta: maximizers solve it
  };

  Mode mode = Mode::kReducedEquivalent;
  std::vector<Vector> points;
  std::vector<SolutionRay> rays;
  bool exact = true;
};

std::string_view to_string(SpecialSolution::Mode m);

SpecialSolution solve_special(const SpecialInstance& inst);

/// Whether f has exactly one minimizer.
Decision uniqueness_check(const SpecialInstance& inst, double tol = 1e-9);

}  // namespace dcloc
