#pragma once

// DC algorithm for the signed-weight location problem. The objective is split
// as g - h with
//   g(x) = sum_i a_i d(x; A_i) + lambda/2 |x|^2 + indicator(x; S)
//   h(x) = sum_j b_j d(x; B_j) + lambda/2 |x|^2,
// and every outer step linearizes h at x_k and minimizes the convex remainder
// with the inner solver.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dcloc/inner_solver.hpp"
#include "dcloc/model.hpp"

namespace dcloc {

class CounterRng;

struct DcaConfig {
  double lambda = 1.0;
  int max_outer = 1000;
  double outer_step_tol = 1e-8;
  InnerConfig inner;
  bool record_trajectory = false;
};

struct TrajectoryPoint {
  int k = 0;
  Vector x;
  Vector y;  // element of dh(x) used for the step taken from x
  double f_value = 0.0;
  double step_norm = 0.0;  // |x_k - x_{k-1}|, 0 at k = 0
};

enum class Termination { kStepTol, kMaxOuter };

std::string_view to_string(Termination t);

struct SolveReport {
  Vector final_x;
  double final_value = 0.0;
  int outer_iterations = 0;
  Termination termination = Termination::kMaxOuter;
  double criticality_residual = 0.0;
  std::optional<std::vector<TrajectoryPoint>> trajectory;
  std::vector<InnerMethod> inner_methods_used;  // one entry per outer step
};

/// y = sum_j b_j w_j + lambda x with w_j the unit exterior gradient of
/// d(.; B_j) at x, or 0 when x lies in B_j.
Vector repulsion_subgradient(const ProblemInstance& inst, double lambda,
                             const Vector& x);

struct DcaStep {
  Vector y;
  Vector x_next;
  InnerMethod method = InnerMethod::kWeiszfeld;
};

/// One outer step from a feasible x_k; the inner solve starts at x_k.
DcaStep dca_step(const ProblemInstance& inst, double lambda, const Vector& x_k,
                 const InnerConfig& inner);

SolveReport dca_solve(const ProblemInstance& inst, const Vector& x0,
                      const DcaConfig& cfg);

/// |x_next - x| for one outer step from x. Vanishes exactly at fixed points
/// of the step, which are the critical points of g - h.
double criticality_residual(const ProblemInstance& inst, double lambda,
                            const Vector& x, const InnerConfig& inner = {});

/// Box to draw random starts from: the bounding box of a bounded constraint,
/// otherwise a padded box around the reference points of all sets.
AxisBox sampling_box(const ProblemInstance& inst);

/// Uniform point of `box` projected onto the constraint set.
Vector random_feasible_point(const ProblemInstance& inst, const AxisBox& box,
                             CounterRng& rng);

struct MultiStartReport {
  SolveReport best;
  std::size_t best_index = 0;
  std::vector<SolveReport> runs;
};

/// Runs `starts` independent solves. Start 0 is `first_start` when given
/// (otherwise the projected center of the sampling box); start i >= 1 draws
/// from stream i of `seed`. The best final value wins; ties go to the
/// lexicographically smallest point.
MultiStartReport dca_multistart(const ProblemInstance& inst, const DcaConfig& cfg,
                                int starts, std::uint64_t seed,
                                const std::optional<Vector>& first_start = std::nullopt);

bool lexicographically_less(const Vector& a, const Vector& b);

}  // namespace dcloc
