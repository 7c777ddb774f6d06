#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "dcloc/geometry.hpp"
#include "dcloc/model.hpp"

namespace dcloc {

/// The strongly convex subproblem
///   min over x in constraint of  sum_i a_i d(x; A_i) + lambda/2 |x|^2 - <v, x>.
/// Non-owning view; the attraction sets and constraint must outlive it.
struct InnerProblem {
  Vector v;
  double lambda = 1.0;
  std::span<const WeightedSet> attractions;
  const ConvexSet* constraint = nullptr;
};

enum class InnerMethod { kWeiszfeld, kSubgradient, kAuto };

std::string_view to_string(InnerMethod m);

struct InnerConfig {
  InnerMethod method = InnerMethod::kAuto;
  int max_iters = 1000;
  double step_tol = 1e-10;
  double subgradient_step_scale = 1.0;
  bool record_history = false;
};

struct InnerResult {
  Vector x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  InnerMethod method_used = InnerMethod::kWeiszfeld;
  std::vector<Vector> history;  // iterates incl. start, when requested
};

double phi(const InnerProblem& prob, const Vector& x);

/// Generalized Weiszfeld map
///   (sum_i a_i P(x;A_i)/d(x;A_i) + v) / (sum_i a_i/d(x;A_i) + lambda).
/// Throws OnTargetSet when x is within 1e-9 (1 + |x|) of an attraction set.
Vector weiszfeld_map(const InnerProblem& prob, const Vector& x);

/// Iterates x <- P(F(x); constraint) until the step is at most step_tol.
/// Throws NotInConstraint for an infeasible start and lets OnTargetSet escape.
InnerResult weiszfeld_solve(const InnerProblem& prob, const Vector& x0,
                            const InnerConfig& cfg);

/// Projected subgradient with step scale/l at iteration l; returns the best
/// iterate seen. Selects 0 from the distance subdifferential on target sets.
InnerResult subgradient_solve(const InnerProblem& prob, const Vector& x0,
                              const InnerConfig& cfg);

/// Dispatches on cfg.method. kAuto runs Weiszfeld and, if an iterate lands on
/// a target set, continues with the subgradient method from that iterate.
InnerResult solve_inner(const InnerProblem& prob, const Vector& x0,
                        const InnerConfig& cfg);

}  // namespace dcloc
