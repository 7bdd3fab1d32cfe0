#pragma once

// Rigid circular indenter with stick contact, driven by a depth ramp.
// Works on any LinearOperator so the finite-element reference uses the same
// contact rule as the peridynamic model.

#include <pdsc/geometry.hpp>
#include <pdsc/solver.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <vector>

namespace pdsc {

struct IndenterState {
  /// Indenter centre at zero depth (tangent to the surface).
  Point initial_center = Point::Zero();
  double radius = 1.0;
  double depth = 0.0;
  /// Stuck node -> attachment point relative to the indenter centre.
  std::map<std::size_t, Vec2> stuck;

  Point center() const { return initial_center - Vec2(0.0, depth); }
};

struct RampSchedule {
  double max_depth = 2.0;
  int increments = 100;

  std::vector<double> depths() const {
    std::vector<double> d;
    for (int k = 0; k <= increments; ++k)
      d.push_back(max_depth * k / increments);
    return d;
  }
};

struct IndentationStep {
  double depth = 0.0;
  double force = 0.0; ///< downward force on the indenter (positive)
  std::size_t contacts = 0;
  SolveStats stats;
};

struct IndentationResult {
  std::vector<IndentationStep> curve;
  bool aborted = false;
  double failure_depth = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::size_t> inverted_bonds;
  /// Displacements at the last converged, inversion-free depth.
  std::vector<double> u;
  /// Displacements of the step that failed the inversion check (if any).
  std::vector<double> u_failed;
  IndenterState indenter;

  double final_depth() const { return curve.empty() ? 0.0 : curve.back().depth; }
  double final_force() const { return curve.empty() ? 0.0 : curve.back().force; }
};

using InversionCheck = std::function<std::vector<std::size_t>(std::span<const double>)>;
using StepObserver = std::function<void(const IndentationStep&, std::span<const double>)>;

/// Ramps the indenter down. Per increment: newly penetrating candidate nodes
/// are projected radially onto the indenter and stick to it; all stuck nodes
/// follow the indenter rigidly; equilibrium is solved; the optional inversion
/// check aborts the ramp.
template <LinearOperator Op>
IndentationResult run_indentation(const Op& k, const std::vector<Point>& positions,
                                  const std::vector<std::size_t>& candidates, const BCSet& base,
                                  IndenterState indenter, const RampSchedule& ramp,
                                  const SolverOptions& opts = {},
                                  const InversionCheck& check_inversion = {},
                                  const StepObserver& observer = {}) {
  IndentationResult result;
  std::vector<double> u(2 * positions.size(), 0.0);

  for (double depth : ramp.depths()) {
    indenter.depth = depth;
    const Point c = indenter.center();
    for (std::size_t n : candidates) {
      if (indenter.stuck.count(n))
        continue;
      const Point p = positions[n] + Vec2(u[2 * n], u[2 * n + 1]);
      const Vec2 r = p - c;
      const double dist = r.norm();
      if (dist < indenter.radius && dist > 0.0)
        indenter.stuck.emplace(n, indenter.radius * r / dist);
    }

    BCSet bcs = base;
    for (const auto& [n, attach] : indenter.stuck)
      bcs.fix(n, c + attach - positions[n]);

    IndentationStep step;
    step.depth = depth;
    step.contacts = indenter.stuck.size();
    std::vector<double> trial = u;
    step.stats = solve_constrained(k, bcs, trial, opts);

    if (check_inversion) {
      auto inverted = check_inversion(trial);
      if (!inverted.empty()) {
        result.aborted = true;
        result.failure_depth = depth;
        result.inverted_bonds = std::move(inverted);
        result.u_failed = std::move(trial);
        break;
      }
    }
    u = std::move(trial);

    const auto r = residual_forces(k, u, bcs);
    double fy = 0.0;
    for (const auto& [n, attach] : indenter.stuck)
      fy += r[2 * n + 1];
    step.force = -fy;
    result.curve.push_back(step);
    if (observer)
      observer(step, u);
  }
  result.u = std::move(u);
  result.indenter = std::move(indenter);
  return result;
}

} // namespace pdsc
