#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcloc/geometry.hpp"

namespace dcloc {

struct WeightedSet {
  ConvexSet set;
  double weight;
};

/// min over x in `constraint` of
///   sum_i a_i d(x; A_i) - sum_j b_j d(x; B_j)
/// where (A_i, a_i) are the attractions and (B_j, b_j) the repulsions.
struct ProblemInstance {
  int dimension = 0;
  std::vector<WeightedSet> attractions;
  std::vector<WeightedSet> repulsions;
  ConvexSet constraint = ConvexSet::whole_space(1);
};

double total_weight(const std::vector<WeightedSet>& sets);

/// The objective on all of R^n; constraint membership is not required.
double evaluate_objective(const ProblemInstance& inst, const Vector& x);

/// Convex components of the objective with the quadratic shift lambda/2 |x|^2.
/// `g` carries the constraint indicator and is +inf off the constraint set.
struct SplitValue {
  double g;
  double h;
};

SplitValue evaluate_split(const ProblemInstance& inst, double lambda,
                          const Vector& x);

enum class Verdict {
  kExists,
  kNoSolutionUnboundedBelow,
  kObjectiveBounded,
  kNoSolutionInfimumNotAttained,
  kUnknown,
};

enum class ExistenceRule {
  kNone,
  kBoundedConstraint,      // bounded constraint set
  kDominantAttraction,     // attraction weight wins, all attraction sets bounded
  kDominantRepulsion,      // repulsion weight wins, unbounded constraint
  kBalancedBounded,        // equal weight totals, every set bounded
  kUnattainedInfimum,      // points, one repulsion, independent offsets
};

struct ExistenceReport {
  Verdict verdict = Verdict::kUnknown;
  ExistenceRule rule = ExistenceRule::kNone;
  std::optional<double> gamma;                // |f| <= gamma everywhere
  std::optional<Vector> w;                    // weighted point imbalance
  std::optional<std::size_t> majority_index;  // solutions lie in this attraction set
  std::optional<double> infimum;
};

std::string_view to_string(Verdict v);
std::string_view to_string(ExistenceRule r);

/// Applies the sufficient existence/nonexistence rules in a fixed order; the
/// first rule that fires decides the verdict. `unknown` means none fired.
ExistenceReport existence_classify(const ProblemInstance& inst);

/// Uniform bound on |f| for balanced instances with bounded sets, using set
/// reference points as the selections. nullopt when the preconditions fail.
std::optional<double> balanced_objective_bound(const ProblemInstance& inst);

struct Diagnostic {
  enum class Code {
    kDimensionMismatch,
    kNonPositiveWeight,
    kNoAttractions,
    kAttractionMeetsConstraint,
  };
  enum class Severity { kError, kWarning };

  Code code;
  Severity severity;
  std::optional<std::size_t> index;  // attraction index when relevant
  std::string message;
};

std::vector<Diagnostic> validate_instance(const ProblemInstance& inst);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// Every attraction set is disjoint from the constraint set, so the Weiszfeld
/// map is defined at every feasible point.
bool weiszfeld_applicable(const ProblemInstance& inst);

}  // namespace dcloc
