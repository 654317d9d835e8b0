#include "ubiloc/solve.hpp"

#include <cmath>
#include <limits>

#include "ubiloc/error.hpp"

namespace ubiloc {

namespace {

constexpr double kAtAnchorEps = 1e-12;

bool finite(double v) { return std::isfinite(v); }
bool finite(Vec2 v) { return finite(v.x) && finite(v.y); }

void check_inputs(std::span<const WeightedRange> anchors, Vec2 init) {
  for (const WeightedRange& a : anchors) {
    if (!finite(a.position) || !finite(a.range_m) || a.range_m < 0.0) {
      throw ValidationError("solver input: anchor positions and ranges must be finite, ranges >= 0");
    }
    if (!finite(a.weight) || !(a.weight > 0.0)) {
      throw ValidationError("solver input: weights must be positive and finite");
    }
  }
  if (!finite(init)) throw ValidationError("solver input: init must be finite");
}

double weighted_cost(std::span<const WeightedRange> anchors, std::span<const double> w, Vec2 p) {
  double c = 0.0;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const double r = euclidean_distance(p, anchors[i].position) - anchors[i].range_m;
    c += w[i] * r * r;
  }
  return c;
}

struct Normal2x2 {
  double h00 = 0.0, h01 = 0.0, h11 = 0.0;
  double g0 = 0.0, g1 = 0.0;
};

Normal2x2 assemble(std::span<const WeightedRange> anchors, std::span<const double> w, Vec2 p) {
  Normal2x2 n;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const Vec2 d = p - anchors[i].position;
    const double dist = norm(d);
    if (dist < kAtAnchorEps) continue;  // direction undefined exactly at an anchor
    const double ux = d.x / dist;
    const double uy = d.y / dist;
    const double r = dist - anchors[i].range_m;
    n.h00 += w[i] * ux * ux;
    n.h01 += w[i] * ux * uy;
    n.h11 += w[i] * uy * uy;
    n.g0 += w[i] * r * ux;
    n.g1 += w[i] * r * uy;
  }
  return n;
}

double condition_number(const Normal2x2& n) {
  const double tr = n.h00 + n.h11;
  const double det = n.h00 * n.h11 - n.h01 * n.h01;
  const double disc = std::max(0.0, tr * tr - 4.0 * det);
  const double root = std::sqrt(disc);
  const double lmax = 0.5 * (tr + root);
  const double lmin = 0.5 * (tr - root);
  if (!(lmin > 0.0)) return std::numeric_limits<double>::infinity();
  return lmax / lmin;
}

}  // namespace

const char* fix_method_name(FixMethod method) {
  switch (method) {
    case FixMethod::Multilateration: return "multilateration";
    case FixMethod::OneShot: return "one_shot";
    case FixMethod::DeadReckoned: return "dead_reckoned";
  }
  return "unknown";
}

Vec2 linear_init(std::span<const WeightedRange> anchors) {
  if (anchors.size() < 3) throw GeometryError("linear_init requires at least 3 anchors");
  check_inputs(anchors, Vec2{});

  const Vec2 p0 = anchors[0].position;
  const double d0sq = anchors[0].range_m * anchors[0].range_m;
  const double n0 = dot(p0, p0);

  double m00 = 0.0, m01 = 0.0, m11 = 0.0, v0 = 0.0, v1 = 0.0;
  for (std::size_t i = 1; i < anchors.size(); ++i) {
    const Vec2 pi = anchors[i].position;
    const double ax = 2.0 * (pi.x - p0.x);
    const double ay = 2.0 * (pi.y - p0.y);
    const double b = d0sq - anchors[i].range_m * anchors[i].range_m + dot(pi, pi) - n0;
    m00 += ax * ax;
    m01 += ax * ay;
    m11 += ay * ay;
    v0 += ax * b;
    v1 += ay * b;
  }

  const double det = m00 * m11 - m01 * m01;
  const double tr = m00 + m11;
  if (!(det > 1e-12 * tr * tr)) {
    throw GeometryError("linear_init: anchors are collinear (rank < 2)");
  }
  return {(m11 * v0 - m01 * v1) / det, (m00 * v1 - m01 * v0) / det};
}

namespace {

// One damped Gauss-Newton descent from a single starting point.
Vec2 gauss_newton(std::span<const WeightedRange> anchors, std::span<const double> w,
                  Vec2 init, const SolverOptions& options) {
  Vec2 p = init;
  double current = weighted_cost(anchors, w, p);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const Normal2x2 nm = assemble(anchors, w, p);
    const double det = nm.h00 * nm.h11 - nm.h01 * nm.h01;
    const double tr = nm.h00 + nm.h11;
    if (!(tr > 0.0) || !(det > 1e-16 * tr * tr)) break;  // singular normal matrix

    Vec2 step{-(nm.h11 * nm.g0 - nm.h01 * nm.g1) / det,
              -(nm.h00 * nm.g1 - nm.h01 * nm.g0) / det};

    bool accepted = false;
    for (int halving = 0; halving <= options.max_damping_halvings; ++halving) {
      const Vec2 cand = p + step;
      const double c = weighted_cost(anchors, w, cand);
      if (c < current) {
        p = cand;
        current = c;
        accepted = true;
        break;
      }
      step = 0.5 * step;
    }
    if (!accepted) break;  // no descent even after damping: converged
    if (norm(step) < options.step_tolerance_m) break;
  }
  return p;
}

}  // namespace

FixResult solve_fix(std::span<const WeightedRange> anchors, Vec2 init,
                    const SolverOptions& options) {
  if (anchors.size() < 3) throw GeometryError("solve_fix requires at least 3 anchors");
  check_inputs(anchors, init);

  // Normalize weights to mean one. The argmin and the weighted residual RMS
  // are invariant under a common weight scale; this keeps the normal
  // equations well scaled regardless of the caller's sigma units.
  const std::size_t n = anchors.size();
  std::vector<double> w(n);
  double wsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) wsum += anchors[i].weight;
  for (std::size_t i = 0; i < n; ++i) w[i] = anchors[i].weight * static_cast<double>(n) / wsum;

  // A far-off init can descend into the mirror basin of the range cost, so a
  // second descent starts from the closed-form linearized solution and the
  // lower-cost point wins.
  Vec2 p = gauss_newton(anchors, w, init, options);
  double cost = weighted_cost(anchors, w, p);
  try {
    const Vec2 alt = gauss_newton(anchors, w, linear_init(anchors), options);
    const double alt_cost = weighted_cost(anchors, w, alt);
    if (alt_cost < cost) {
      p = alt;
      cost = alt_cost;
    }
  } catch (const GeometryError&) {
    // Collinear anchors have no linearized start; keep the caller's basin.
  }

  FixResult fix;
  fix.position = p;
  fix.method = FixMethod::Multilateration;

  double wr2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = euclidean_distance(p, anchors[i].position) - anchors[i].range_m;
    wr2 += w[i] * r * r;
  }
  fix.residual_rms_m = std::sqrt(wr2 / static_cast<double>(n));
  fix.condition_ok = condition_number(assemble(anchors, w, p)) <= options.condition_limit;
  fix.anchors_used.reserve(n);
  for (const WeightedRange& a : anchors) fix.anchors_used.push_back(a.anchor_id);
  fix.solver_inputs.assign(anchors.begin(), anchors.end());
  return fix;
}

}  // namespace ubiloc
