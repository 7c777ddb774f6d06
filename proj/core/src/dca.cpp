#include "dcloc/dca.hpp"

#include <algorithm>

#include "dcloc/errors.hpp"
#include "dcloc/random.hpp"

namespace dcloc {

std::string_view to_string(Termination t) {
  return t == Termination::kStepTol ? "step_tol" : "max_outer";
}

Vector repulsion_subgradient(const ProblemInstance& inst, double lambda,
                             const Vector& x) {
  if (x.size() != inst.dimension) throw DimensionMismatch(inst.dimension, x.size());
  Vector y = lambda * x;
  const double tol = default_tolerance(x);
  for (const auto& b : inst.repulsions) {
    auto sub = distance_subgradient(b.set, x, tol);
    if (sub.exterior()) y += b.weight * sub.gradient;
  }
  return y;
}

DcaStep dca_step(const ProblemInstance& inst, double lambda, const Vector& x_k,
                 const InnerConfig& inner) {
  if (!contains(inst.constraint, x_k)) throw NotInConstraint();
  DcaStep step;
  step.y = repulsion_subgradient(inst, lambda, x_k);
  InnerProblem prob{step.y, lambda, inst.attractions, &inst.constraint};
  InnerResult r = solve_inner(prob, x_k, inner);
  step.x_next = std::move(r.x);
  step.method = r.method_used;
  return step;
}

SolveReport dca_solve(const ProblemInstance& inst, const Vector& x0,
                      const DcaConfig& cfg) {
  if (x0.size() != inst.dimension) throw DimensionMismatch(inst.dimension, x0.size());
  if (!contains(inst.constraint, x0)) throw NotInConstraint();
  if (!(cfg.lambda > 0.0) || cfg.max_outer < 1) {
    throw PreconditionViolated("dca: need lambda > 0 and max_outer >= 1");
  }
  SolveReport report;
  std::vector<TrajectoryPoint> trajectory;
  Vector x = x0;
  if (cfg.record_trajectory) {
    trajectory.push_back({0, x, Vector(), evaluate_objective(inst, x), 0.0});
  }
  for (int k = 1; k <= cfg.max_outer; ++k) {
    DcaStep step = dca_step(inst, cfg.lambda, x, cfg.inner);
    const double step_norm = (step.x_next - x).norm();
    if (cfg.record_trajectory) trajectory.back().y = std::move(step.y);
    report.inner_methods_used.push_back(step.method);
    x = std::move(step.x_next);
    report.outer_iterations = k;
    if (cfg.record_trajectory) {
      trajectory.push_back({k, x, Vector(), evaluate_objective(inst, x), step_norm});
    }
    if (step_norm <= cfg.outer_step_tol) {
      report.termination = Termination::kStepTol;
      break;
    }
  }
  if (cfg.record_trajectory) {
    trajectory.back().y = repulsion_subgradient(inst, cfg.lambda, x);
    report.trajectory = std::move(trajectory);
  }
  report.final_value = evaluate_objective(inst, x);
  report.criticality_residual = criticality_residual(inst, cfg.lambda, x, cfg.inner);
  report.final_x = std::move(x);
  return report;
}

double criticality_residual(const ProblemInstance& inst, double lambda,
                            const Vector& x, const InnerConfig& inner) {
  return (dca_step(inst, lambda, x, inner).x_next - x).norm();
}

AxisBox sampling_box(const ProblemInstance& inst) {
  if (auto box = bounding_box(inst.constraint)) return *box;
  Vector lo = reference_point(inst.constraint);
  Vector hi = lo;
  auto extend = [&](const ConvexSet& s) {
    const Vector p = reference_point(s);
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  };
  for (const auto& a : inst.attractions) extend(a.set);
  for (const auto& b : inst.repulsions) extend(b.set);
  const double pad = std::max(1.0, 0.5 * (hi - lo).maxCoeff());
  lo.array() -= pad;
  hi.array() += pad;
  if (const AxisBox* s = inst.constraint.as<AxisBox>()) {
    lo = lo.cwiseMax(s->lower);
    hi = hi.cwiseMin(s->upper);
  }
  return {lo, hi};
}

Vector random_feasible_point(const ProblemInstance& inst, const AxisBox& box,
                             CounterRng& rng) {
  Vector p(inst.dimension);
  for (int k = 0; k < inst.dimension; ++k) p[k] = rng.uniform(box.lower[k], box.upper[k]);
  return project(inst.constraint, p);
}

bool lexicographically_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

MultiStartReport dca_multistart(const ProblemInstance& inst, const DcaConfig& cfg,
                                int starts, std::uint64_t seed,
                                const std::optional<Vector>& first_start) {
  if (starts < 1) throw PreconditionViolated("multistart: need at least one start");
  const AxisBox box = sampling_box(inst);
  MultiStartReport out;
  out.runs.reserve(static_cast<std::size_t>(starts));
  for (int i = 0; i < starts; ++i) {
    Vector x0;
    if (i == 0) {
      x0 = first_start ? *first_start
                       : project(inst.constraint, 0.5 * (box.lower + box.upper));
    } else {
      CounterRng rng(seed, static_cast<std::uint64_t>(i));
      x0 = random_feasible_point(inst, box, rng);
    }
    out.runs.push_back(dca_solve(inst, x0, cfg));
  }
  for (std::size_t i = 1; i < out.runs.size(); ++i) {
    const auto& cand = out.runs[i];
    const auto& best = out.runs[out.best_index];
    if (cand.final_value < best.final_value ||
        (cand.final_value == best.final_value &&
         lexicographically_less(cand.final_x, best.final_x))) {
      out.best_index = i;
    }
  }
  out.best = out.runs[out.best_index];
  return out;
}

}  // namespace dcloc
