#pragma once

#include <span>
#include <string>
#include <vector>

#include "ubiloc/geometry.hpp"

namespace ubiloc {

// One solver input: an anchor at a known position, a measured range and the
// weight (1/sigma^2) attached to that range.
struct WeightedRange {
  int anchor_id = 0;
  Vec2 position;
  double range_m = 0.0;
  double weight = 1.0;
};

enum class FixMethod { Multilateration, OneShot, DeadReckoned };

const char* fix_method_name(FixMethod method);

struct FixResult {
  Vec2 position;
  double residual_rms_m = 0.0;
  std::vector<int> anchors_used;  // selection order
  FixMethod method = FixMethod::Multilateration;
  bool condition_ok = true;
  // Inputs behind a multilateration fix, kept for diagnostics.
  std::vector<WeightedRange> solver_inputs;
};

// Closed-form starting point: subtracting the first range equation from the
// rest linearizes the circles into A p = b, solved in least squares.
// Throws GeometryError when the anchors are collinear (rank < 2).
Vec2 linear_init(std::span<const WeightedRange> anchors);

struct SolverOptions {
  int max_iterations = 50;
  double step_tolerance_m = 1e-9;
  int max_damping_halvings = 10;
  double condition_limit = 1e8;
};

// Damped Gauss-Newton minimization of sum_i w_i (||p - a_i|| - d_i)^2.
// Steps that increase the cost are halved up to max_damping_halvings times;
// iteration stops when the applied step drops below step_tolerance_m. A
// second descent from the linearized solution guards against the mirror
// basin when `init` is far off; the lower-cost point is returned.
// condition_ok is cleared (result still returned) when the normal-equation
// condition number exceeds condition_limit. Requires >= 3 anchors, positive
// weights and finite inputs.
FixResult solve_fix(std::span<const WeightedRange> anchors, Vec2 init,
                    const SolverOptions& options = {});

}  // namespace ubiloc
