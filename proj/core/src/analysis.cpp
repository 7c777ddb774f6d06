#include "dcloc/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "dcloc/errors.hpp"

namespace dcloc {
namespace {

bool equal_weights(const SpecialInstance& inst) {
  return std::abs(inst.alpha - inst.beta) <= 1e-12 * std::max(inst.alpha, inst.beta);
}

constexpr long long kGridBudget = 1'000'000;

ReducedMax grid_max(const SpecialInstance& inst, double grid_resolution) {
  const AxisBox box = *bounding_box(inst.omega);
  const int n = inst.omega.dimension();
  const Vector extent = box.upper - box.lower;
  long long per_axis = static_cast<long long>(std::ceil(1.0 / grid_resolution)) + 1;
  const auto cap = static_cast<long long>(
      std::floor(std::pow(static_cast<double>(kGridBudget), 1.0 / n)));
  per_axis = std::clamp(per_axis, 2LL, std::max(2LL, cap));

  ReducedMax out;
  out.exact = false;
  out.resolution = extent.maxCoeff() / static_cast<double>(per_axis - 1);
  double best = -kInf;
  Vector best_x;
  std::vector<long long> idx(static_cast<std::size_t>(n), 0);
  Vector p(n);
  while (true) {
    for (int k = 0; k < n; ++k) {
      p[k] = box.lower[k] + extent[k] * static_cast<double>(idx[k]) /
                                static_cast<double>(per_axis - 1);
    }
    const Vector q = project(inst.omega, p);
    const double d = distance(inst.theta, q);
    if (d > best) {
      best = d;
      best_x = q;
    }
    int k = 0;
    while (k < n && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == n) break;
  }
  out.points.push_back(best_x);
  return out;
}

// Farthest point of a ball from `from`; nullopt when from is the center.
std::optional<Vector> antipodal(const Ball& ball, const Vector& from) {
  Vector d = ball.center - from;
  const double n = d.norm();
  if (n <= 1e-12 * (1.0 + ball.center.norm())) return std::nullopt;
  return Vector(ball.center + (ball.radius / n) * d);
}

}  // namespace

void validate(const SpecialInstance& inst) {
  if (inst.omega.dimension() != inst.theta.dimension()) {
    throw DimensionMismatch(inst.omega.dimension(), inst.theta.dimension());
  }
  if (!(inst.beta > 0.0) || !(inst.alpha >= inst.beta)) {
    throw PreconditionViolated("special instance needs alpha >= beta > 0");
  }
}

double special_objective(const SpecialInstance& inst, const Vector& x) {
  return inst.alpha * distance(inst.omega, x) - inst.beta * distance(inst.theta, x);
}

ProblemInstance to_problem(const SpecialInstance& inst) {
  const int n = inst.omega.dimension();
  return {n, {{inst.omega, inst.alpha}}, {{inst.theta, inst.beta}},
          ConvexSet::whole_space(n)};
}

std::optional<SpecialInstance> as_special(const ProblemInstance& inst) {
  if (inst.attractions.size() != 1 || inst.repulsions.size() != 1) return std::nullopt;
  return SpecialInstance{inst.attractions[0].set, inst.repulsions[0].set,
                         inst.attractions[0].weight, inst.repulsions[0].weight};
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::kNo: return "false";
    case Decision::kYes: return "true";
    case Decision::kUndecided: return "undecided";
  }
  return "undecided";
}

std::string_view to_string(SpecialSolution::Mode m) {
  switch (m) {
    case SpecialSolution::Mode::kReducedEquivalent: return "reduced-equivalent";
    case SpecialSolution::Mode::kRayFamily: return "ray-family";
    case SpecialSolution::Mode::kReducedSubset: return "reduced-subset";
  }
  return "reduced-equivalent";
}

PointClass classify_point(const SpecialInstance& inst, const Vector& x, double tol) {
  validate(inst);
  const double a = inst.alpha;
  const double b = inst.beta;
  const auto sub_omega = distance_subgradient(inst.omega, x, tol);
  const auto sub_theta = distance_subgradient(inst.theta, x, tol);
  auto yes_no = [](bool v) { return v ? Decision::kYes : Decision::kNo; };
  PointClass out;

  if (sub_omega.exterior() && sub_theta.exterior()) {
    // Both subdifferentials are single vectors.
    const Vector g = a * sub_omega.gradient;
    const Vector h = b * sub_theta.gradient;
    const bool match = (g - h).norm() <= tol * std::max(1.0, a);
    out.stationary = out.critical = yes_no(match);
    if (match) out.witness = g;
  } else if (!sub_omega.exterior() && sub_theta.exterior()) {
    // dh = {h}; dg = a (N(x; Omega) intersected with the unit ball).
    const Vector h = b * sub_theta.gradient;
    const bool inside = h.norm() <= a * (1.0 + tol) &&
                        normal_cone_contains(inst.omega, x, h, tol);
    out.stationary = out.critical = yes_no(inside);
    if (inside) out.witness = h;
  } else if (sub_omega.exterior() && !sub_theta.exterior()) {
    // dg = {g} with g != 0 while dh contains 0, so dh is never inside dg.
    const Vector g = a * sub_omega.gradient;
    out.stationary = Decision::kNo;
    const bool meets = a <= b * (1.0 + tol) &&
                       normal_cone_contains(inst.theta, x, sub_omega.gradient, tol);
    out.critical = yes_no(meets);
    if (meets) out.witness = g;
  } else {
    out.critical = Decision::kYes;
    out.witness = Vector::Zero(x.size());
    if (interior_depth(inst.theta, x) > tol) {
      out.stationary = Decision::kYes;  // dh = {0}
    } else if (is_singleton(inst.omega)) {
      out.stationary = Decision::kYes;  // dg = a B contains b B
    } else if (interior_depth(inst.omega, x) > tol || is_singleton(inst.theta)) {
      // dg misses some nonzero direction of dh
      out.stationary = Decision::kNo;
    } else {
      out.stationary = Decision::kUndecided;
    }
  }
  return out;
}

ReducedMax solve_reduced_max(const SpecialInstance& inst, double grid_resolution) {
  if (inst.omega.dimension() != inst.theta.dimension()) {
    throw DimensionMismatch(inst.omega.dimension(), inst.theta.dimension());
  }
  if (!is_bounded(inst.omega)) {
    throw UnboundedDomain("maximization domain is unbounded");
  }
  ReducedMax out;
  if (is_singleton(inst.omega)) {
    out.points.push_back(reference_point(inst.omega));
  } else if (inst.omega.as<AxisBox>()) {
    // d(.; Theta) is convex, so its maximum over a box is attained at a vertex.
    std::vector<Vector> vertices = box_vertices(inst.omega);
    std::vector<double> values;
    values.reserve(vertices.size());
    for (const auto& v : vertices) values.push_back(distance(inst.theta, v));
    const double best = *std::max_element(values.begin(), values.end());
    const double slack = 1e-12 * (1.0 + best);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (values[i] >= best - slack) out.points.push_back(vertices[i]);
    }
  } else {
    const Ball& ball = *inst.omega.as<Ball>();
    std::optional<Vector> far;
    bool closed_form = true;
    if (const Singleton* s = inst.theta.as<Singleton>()) {
      far = antipodal(ball, s->point);
    } else if (const Ball* t = inst.theta.as<Ball>()) {
      far = antipodal(ball, t->center);
    } else if (const Halfspace* h = inst.theta.as<Halfspace>()) {
      far = Vector(ball.center + ball.radius * h->normal.normalized());
    } else {
      closed_form = false;
    }
    if (!closed_form) {
      out = grid_max(inst, grid_resolution);
    } else if (far) {
      out.points.push_back(*far);
    } else {
      out.undecided = true;
    }
  }
  if (!out.points.empty() && distance(inst.theta, out.points.front()) <= 0.0 &&
      is_subset(inst.omega, inst.theta)) {
    out.whole_set = true;
  }
  return out;
}

std::vector<SolutionRay> solution_rays(const SpecialInstance& inst,
                                       const std::vector<Vector>& maximizers) {
  validate(inst);
  if (!equal_weights(inst)) {
    throw PreconditionViolated("solution rays need alpha == beta");
  }
  if (is_subset(inst.omega, inst.theta)) {
    throw PreconditionViolated("solution rays need Omega not inside Theta");
  }
  std::vector<SolutionRay> rays;
  rays.reserve(maximizers.size());
  for (const auto& u : maximizers) {
    rays.push_back({u, u - project(inst.theta, u)});
  }
  return rays;
}

SpecialSolution solve_special(const SpecialInstance& inst) {
  validate(inst);
  ReducedMax reduced = solve_reduced_max(inst);
  SpecialSolution out;
  out.exact = reduced.exact && !reduced.undecided;
  if (!equal_weights(inst)) {
    out.mode = SpecialSolution::Mode::kReducedEquivalent;
    out.points = std::move(reduced.points);
  } else if (!is_subset(inst.omega, inst.theta)) {
    out.mode = SpecialSolution::Mode::kRayFamily;
    out.rays = solution_rays(inst, reduced.points);
  } else {
    out.mode = SpecialSolution::Mode::kReducedSubset;
    out.points = std::move(reduced.points);
  }
  return out;
}

Decision uniqueness_check(const SpecialInstance& inst, double tol) {
  validate(inst);
  if (equal_weights(inst)) {
    if (!is_singleton(inst.omega)) return Decision::kNo;
    const Vector u = reference_point(inst.omega);
    return interior_depth(inst.theta, u) > tol ? Decision::kYes : Decision::kNo;
  }
  if (!is_bounded(inst.omega)) return Decision::kUndecided;
  const ReducedMax reduced = solve_reduced_max(inst);
  if (reduced.undecided) return Decision::kNo;  // a whole sphere of maximizers
  if (reduced.whole_set) {
    return is_singleton(inst.omega) ? Decision::kYes : Decision::kNo;
  }
  if (!reduced.exact) return Decision::kUndecided;
  return reduced.points.size() == 1 ? Decision::kYes : Decision::kNo;
}

}  // namespace dcloc
