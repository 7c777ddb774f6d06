#include "dcloc/model.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "dcloc/errors.hpp"

namespace dcloc {
namespace {

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

bool all_bounded(const std::vector<WeightedSet>& sets) {
  return std::all_of(sets.begin(), sets.end(),
                     [](const WeightedSet& s) { return is_bounded(s.set); });
}

bool all_singletons(const ProblemInstance& inst) {
  auto single = [](const WeightedSet& s) { return is_singleton(s.set); };
  return std::all_of(inst.attractions.begin(), inst.attractions.end(), single) &&
         std::all_of(inst.repulsions.begin(), inst.repulsions.end(), single);
}

Vector weighted_point_sum(const ProblemInstance& inst) {
  Vector w = Vector::Zero(inst.dimension);
  for (const auto& a : inst.attractions) w += a.weight * reference_point(a.set);
  for (const auto& b : inst.repulsions) w -= b.weight * reference_point(b.set);
  return w;
}

// Offsets a_i - b are linearly independent (singular values above 1e-9
// relative to the largest).
bool independent_offsets(const ProblemInstance& inst) {
  const auto p = static_cast<Eigen::Index>(inst.attractions.size());
  if (p > inst.dimension) return false;
  const Vector b = reference_point(inst.repulsions.front().set);
  Eigen::MatrixXd m(inst.dimension, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    m.col(i) = reference_point(inst.attractions[i].set) - b;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return false;
  return (s.array() > 1e-9 * s[0]).count() == p;
}

std::optional<std::size_t> majority_index(const ProblemInstance& inst) {
  const double total = total_weight(inst.attractions) + total_weight(inst.repulsions);
  for (std::size_t i = 0; i < inst.attractions.size(); ++i) {
    const auto& a = inst.attractions[i];
    if (a.weight > total - a.weight && is_subset(a.set, inst.constraint)) {
      return i;
    }
  }
  return std::nullopt;
}

}  // namespace

double total_weight(const std::vector<WeightedSet>& sets) {
  double sum = 0.0;
  for (const auto& s : sets) sum += s.weight;
  return sum;
}

double evaluate_objective(const ProblemInstance& inst, const Vector& x) {
  if (x.size() != inst.dimension) throw DimensionMismatch(inst.dimension, x.size());
  double f = 0.0;
  for (const auto& a : inst.attractions) f += a.weight * distance(a.set, x);
  for (const auto& b : inst.repulsions) f -= b.weight * distance(b.set, x);
  return f;
}

SplitValue evaluate_split(const ProblemInstance& inst, double lambda,
                          const Vector& x) {
  if (x.size() != inst.dimension) throw DimensionMismatch(inst.dimension, x.size());
  const double quad = 0.5 * lambda * x.squaredNorm();
  double h = quad;
  for (const auto& b : inst.repulsions) h += b.weight * distance(b.set, x);
  if (!contains(inst.constraint, x)) return {kInf, h};
  double g = quad;
  for (const auto& a : inst.attractions) g += a.weight * distance(a.set, x);
  return {g, h};
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kExists: return "exists";
    case Verdict::kNoSolutionUnboundedBelow: return "no_solution_unbounded_below";
    case Verdict::kObjectiveBounded: return "objective_bounded";
    case Verdict::kNoSolutionInfimumNotAttained: return "no_solution_infimum_not_attained";
    case Verdict::kUnknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(ExistenceRule r) {
  switch (r) {
    case ExistenceRule::kNone: return "none";
    case ExistenceRule::kBoundedConstraint: return "bounded_constraint";
    case ExistenceRule::kDominantAttraction: return "dominant_attraction";
    case ExistenceRule::kDominantRepulsion: return "dominant_repulsion";
    case ExistenceRule::kBalancedBounded: return "balanced_bounded";
    case ExistenceRule::kUnattainedInfimum: return "unattained_infimum";
  }
  return "none";
}

std::optional<double> balanced_objective_bound(const ProblemInstance& inst) {
  const double sa = total_weight(inst.attractions);
  const double sb = total_weight(inst.repulsions);
  if (!nearly_equal(sa, sb) || !all_bounded(inst.attractions) ||
      !all_bounded(inst.repulsions)) {
    return std::nullopt;
  }
  double r = 0.0;
  double big_r = 0.0;
  double attraction_anchor = 0.0;
  double repulsion_anchor = 0.0;
  for (const auto& a : inst.attractions) {
    r = std::max(r, *bounding_radius(a.set));
    attraction_anchor += a.weight * reference_point(a.set).norm();
  }
  for (const auto& b : inst.repulsions) {
    big_r = std::max(big_r, *bounding_radius(b.set));
    repulsion_anchor += b.weight * reference_point(b.set).norm();
  }
  // f is bounded below by -(r sa + repulsion_anchor) and above by
  // attraction_anchor + R sb; |f| needs the larger of the two.
  return std::max(r * sa + repulsion_anchor, attraction_anchor + big_r * sb);
}

ExistenceReport existence_classify(const ProblemInstance& inst) {
  ExistenceReport report;
  const double sa = total_weight(inst.attractions);
  const double sb = total_weight(inst.repulsions);
  const bool balanced = nearly_equal(sa, sb);
  const bool s_bounded = is_bounded(inst.constraint);

  if (inst.dimension > 0 && !inst.attractions.empty()) {
    report.majority_index = majority_index(inst);
    if (balanced && all_singletons(inst)) report.w = weighted_point_sum(inst);
  }

  if (s_bounded) {
    report.verdict = Verdict::kExists;
    report.rule = ExistenceRule::kBoundedConstraint;
  } else if (!balanced && sa > sb && all_bounded(inst.attractions)) {
    report.verdict = Verdict::kExists;
    report.rule = ExistenceRule::kDominantAttraction;
  } else if (!balanced && sa < sb && all_bounded(inst.repulsions)) {
    report.verdict = Verdict::kNoSolutionUnboundedBelow;
    report.rule = ExistenceRule::kDominantRepulsion;
  } else if (balanced && all_singletons(inst) && inst.attractions.size() >= 2 &&
             inst.repulsions.size() == 1 && independent_offsets(inst)) {
    // More specific than the balanced-bounded rule, so it is tried first.
    report.verdict = Verdict::kNoSolutionInfimumNotAttained;
    report.rule = ExistenceRule::kUnattainedInfimum;
    report.infimum = -weighted_point_sum(inst).norm();
  } else if (auto gamma = balanced_objective_bound(inst)) {
    report.verdict = Verdict::kObjectiveBounded;
    report.rule = ExistenceRule::kBalancedBounded;
    report.gamma = *gamma;
  }
  return report;
}

std::vector<Diagnostic> validate_instance(const ProblemInstance& inst) {
  using Code = Diagnostic::Code;
  using Severity = Diagnostic::Severity;
  std::vector<Diagnostic> out;
  bool dims_ok = inst.constraint.dimension() == inst.dimension;
  if (!dims_ok) {
    out.push_back({Code::kDimensionMismatch, Severity::kError, std::nullopt,
                   "constraint has dimension " +
                       std::to_string(inst.constraint.dimension()) + ", expected " +
                       std::to_string(inst.dimension)});
  }
  if (inst.attractions.empty()) {
    out.push_back({Code::kNoAttractions, Severity::kError, std::nullopt,
                   "at least one attraction set is required"});
  }
  auto check_group = [&](const std::vector<WeightedSet>& group, std::string_view name) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      const auto& s = group[i];
      std::string where = std::string(name) + "[" + std::to_string(i) + "]";
      if (s.set.dimension() != inst.dimension) {
        dims_ok = false;
        out.push_back({Code::kDimensionMismatch, Severity::kError, i,
                       where + " has dimension " + std::to_string(s.set.dimension()) +
                           ", expected " + std::to_string(inst.dimension)});
      }
      if (!(s.weight > 0.0) || !std::isfinite(s.weight)) {
        out.push_back({Code::kNonPositiveWeight, Severity::kError, i,
                       where + " has non-positive weight"});
      }
    }
  };
  check_group(inst.attractions, "attractions");
  check_group(inst.repulsions, "repulsions");
  if (!dims_ok) return out;
  for (std::size_t i = 0; i < inst.attractions.size(); ++i) {
    if (intersects(inst.attractions[i].set, inst.constraint)) {
      out.push_back({Code::kAttractionMeetsConstraint, Severity::kWarning, i,
                     "attractions[" + std::to_string(i) +
                         "] meets the constraint set; the Weiszfeld map may be "
                         "undefined at feasible points"});
    }
  }
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
    return d.severity == Diagnostic::Severity::kError;
  });
}

bool weiszfeld_applicable(const ProblemInstance& inst) {
  return std::none_of(inst.attractions.begin(), inst.attractions.end(),
                      [&](const WeightedSet& a) { return intersects(a.set, inst.constraint); });
}

}  // namespace dcloc
