#include "dcloc/inner_solver.hpp"

#include "dcloc/errors.hpp"

namespace dcloc {
namespace {

void check(const InnerProblem& prob, const Vector& x) {
  if (prob.constraint == nullptr) {
    throw PreconditionViolated("inner problem has no constraint set");
  }
  if (x.size() != prob.v.size()) throw DimensionMismatch(prob.v.size(), x.size());
}

void require_feasible(const InnerProblem& prob, const Vector& x0) {
  check(prob, x0);
  if (!contains(*prob.constraint, x0)) throw NotInConstraint();
}

}  // namespace

std::string_view to_string(InnerMethod m) {
  switch (m) {
    case InnerMethod::kWeiszfeld: return "weiszfeld";
    case InnerMethod::kSubgradient: return "subgradient";
    case InnerMethod::kAuto: return "auto";
  }
  return "auto";
}

double phi(const InnerProblem& prob, const Vector& x) {
  check(prob, x);
  double value = 0.5 * prob.lambda * x.squaredNorm() - prob.v.dot(x);
  for (const auto& a : prob.attractions) value += a.weight * distance(a.set, x);
  return value;
}

Vector weiszfeld_map(const InnerProblem& prob, const Vector& x) {
  check(prob, x);
  const double threshold = default_tolerance(x);
  Vector numerator = prob.v;
  double denominator = prob.lambda;
  for (std::size_t i = 0; i < prob.attractions.size(); ++i) {
    const auto& a = prob.attractions[i];
    const Vector p = project(a.set, x);
    const double d = (x - p).norm();
    if (d < threshold) throw OnTargetSet(i, x);
    numerator += (a.weight / d) * p;
    denominator += a.weight / d;
  }
  return numerator / denominator;
}

InnerResult weiszfeld_solve(const InnerProblem& prob, const Vector& x0,
                            const InnerConfig& cfg) {
  require_feasible(prob, x0);
  InnerResult out;
  out.method_used = InnerMethod::kWeiszfeld;
  Vector x = x0;
  if (cfg.record_history) out.history.push_back(x);
  for (int t = 1; t <= cfg.max_iters; ++t) {
    Vector next = project(*prob.constraint, weiszfeld_map(prob, x));
    const double step = (next - x).norm();
    x = std::move(next);
    out.iterations = t;
    if (cfg.record_history) out.history.push_back(x);
    if (step <= cfg.step_tol) {
      out.converged = true;
      break;
    }
  }
  out.value = phi(prob, x);
  out.x = std::move(x);
  return out;
}

InnerResult subgradient_solve(const InnerProblem& prob, const Vector& x0,
                              const InnerConfig& cfg) {
  require_feasible(prob, x0);
  InnerResult out;
  out.method_used = InnerMethod::kSubgradient;
  Vector x = x0;
  Vector best = x0;
  double best_value = phi(prob, x0);
  if (cfg.record_history) out.history.push_back(x);
  for (int l = 1; l <= cfg.max_iters; ++l) {
    Vector u = prob.lambda * x - prob.v;
    const double tol = default_tolerance(x);
    for (const auto& a : prob.attractions) {
      auto sub = distance_subgradient(a.set, x, tol);
      if (sub.exterior()) u += a.weight * sub.gradient;
    }
    Vector next = project(*prob.constraint, x - (cfg.subgradient_step_scale / l) * u);
    const double step = (next - x).norm();
    x = std::move(next);
    out.iterations = l;
    if (cfg.record_history) out.history.push_back(x);
    const double value = phi(prob, x);
    if (value < best_value) {
      best_value = value;
      best = x;
    }
    if (step <= cfg.step_tol) {
      out.converged = true;
      break;
    }
  }
  out.x = std::move(best);
  out.value = phi(prob, out.x);
  return out;
}

InnerResult solve_inner(const InnerProblem& prob, const Vector& x0,
                        const InnerConfig& cfg) {
  switch (cfg.method) {
    case InnerMethod::kWeiszfeld:
      return weiszfeld_solve(prob, x0, cfg);
    case InnerMethod::kSubgradient:
      return subgradient_solve(prob, x0, cfg);
    case InnerMethod::kAuto:
      break;
  }
  require_feasible(prob, x0);
  try {
    return weiszfeld_solve(prob, x0, cfg);
  } catch (const OnTargetSet& hit) {
    return subgradient_solve(prob, hit.at, cfg);
  }
}

}  // namespace dcloc
