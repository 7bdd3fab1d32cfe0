#pragma once

// Constrained linear statics: prescribed DOFs are eliminated and the free
// block is solved with Jacobi-preconditioned conjugate gradients.

#include <pdsc/errors.hpp>
#include <pdsc/geometry.hpp>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace pdsc {

/// Symmetric operator on 2 DOFs per node (x, y interleaved).
template <class Op>
concept LinearOperator = requires(const Op& op, std::span<const double> x, std::span<double> y) {
  { op.size() } -> std::convertible_to<std::size_t>;
  op.apply(x, y);
  { op.diagonal() } -> std::convertible_to<std::vector<double>>;
  { op.to_sparse() } -> std::convertible_to<Eigen::SparseMatrix<double>>;
};

enum Axis : std::uint8_t { axis_x = 1, axis_y = 2, axis_xy = 3 };

struct Prescribed {
  std::uint8_t mask = axis_xy;
  Vec2 value = Vec2::Zero();
};

/// Nodal boundary conditions: prescribed displacements and applied forces.
struct BCSet {
  std::map<std::size_t, Prescribed> prescribed;
  std::map<std::size_t, Vec2> loads;

  void prescribe(std::size_t node, std::uint8_t mask, const Vec2& value) {
    auto& p = prescribed.try_emplace(node, Prescribed{0, Vec2::Zero()}).first->second;
    p.mask |= mask;
    for (int a = 0; a < 2; ++a)
      if (mask & (1u << a))
        p.value[a] = value[a];
  }

  void fix(std::size_t node, const Vec2& value = Vec2::Zero()) { prescribe(node, axis_xy, value); }

  void load(std::size_t node, const Vec2& force) {
    auto [it, inserted] = loads.try_emplace(node, Vec2::Zero());
    it->second += force;
  }

  /// Throws ConfigError if a node axis is both prescribed and loaded.
  void validate(std::size_t num_nodes) const {
    for (const auto& [n, p] : prescribed) {
      if (n >= num_nodes)
        throw ConfigError("prescribed node id out of range");
      auto it = loads.find(n);
      if (it == loads.end())
        continue;
      for (int a = 0; a < 2; ++a)
        if ((p.mask & (1u << a)) && it->second[a] != 0.0)
          throw ConfigError("node " + std::to_string(n) + " is both prescribed and loaded");
    }
    for (const auto& [n, f] : loads)
      if (n >= num_nodes)
        throw ConfigError("loaded node id out of range");
  }
};

/// DOF-level view of a BCSet.
struct DofConstraints {
  std::vector<std::uint8_t> fixed;
  std::vector<double> value;
  std::vector<double> rhs;

  DofConstraints(const BCSet& bcs, std::size_t ndof)
      : fixed(ndof, 0), value(ndof, 0.0), rhs(ndof, 0.0) {
    bcs.validate(ndof / 2);
    for (const auto& [n, p] : bcs.prescribed)
      for (int a = 0; a < 2; ++a)
        if (p.mask & (1u << a)) {
          fixed[2 * n + a] = 1;
          value[2 * n + a] = p.value[a];
        }
    for (const auto& [n, f] : bcs.loads)
      for (int a = 0; a < 2; ++a)
        rhs[2 * n + a] += f[a];
  }
};

struct SolverOptions {
  double tolerance = 1e-10;
  /// 0 selects 50 * sqrt(number of DOFs).
  int max_iterations = 0;
};

struct SolveStats {
  int iterations = 0;
  double residual = 0.0;
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    s += a[k] * b[k];
  return s;
}

} // namespace detail

/// Solves K_ff u_f = b_f - K_fp u_p. `u` carries the initial guess for free
/// DOFs (warm start) and receives the solution. Returns the relative
/// residual |K_ff u_f - (b_f - K_fp u_p)| / |b_f - K_fp u_p|.
template <LinearOperator Op>
SolveStats solve_constrained(const Op& op, const BCSet& bcs, std::vector<double>& u,
                             const SolverOptions& opts = {}) {
  const std::size_t n = op.size();
  const DofConstraints c(bcs, n);
  u.resize(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    if (c.fixed[k])
      u[k] = c.value[k];

  const int max_iter = opts.max_iterations > 0
                           ? opts.max_iterations
                           : static_cast<int>(std::ceil(50.0 * std::sqrt(double(n))));

  std::vector<double> r(n), z(n), p(n), q(n), tmp(n);

  // Effective right-hand side b_f - K_fp u_p.
  for (std::size_t k = 0; k < n; ++k)
    tmp[k] = c.fixed[k] ? c.value[k] : 0.0;
  op.apply(tmp, q);
  double bnorm2 = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    if (!c.fixed[k]) {
      const double b = c.rhs[k] - q[k];
      bnorm2 += b * b;
    }
  const double bnorm = std::sqrt(bnorm2);
  SolveStats stats;
  if (bnorm == 0.0) {
    for (std::size_t k = 0; k < n; ++k)
      if (!c.fixed[k])
        u[k] = 0.0;
    return stats;
  }

  std::vector<double> inv_diag = op.diagonal();
  for (std::size_t k = 0; k < n; ++k)
    inv_diag[k] = (c.fixed[k] || inv_diag[k] <= 0.0) ? 0.0 : 1.0 / inv_diag[k];

  auto true_residual = [&]() {
    op.apply(u, q);
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      r[k] = c.fixed[k] ? 0.0 : c.rhs[k] - q[k];
      s += r[k] * r[k];
    }
    return std::sqrt(s) / bnorm;
  };

  double rel = true_residual();
  int it = 0;
  // Restart from the true residual if recurrence and true residual drift apart.
  for (int restart = 0; restart < 5 && rel > opts.tolerance && it < max_iter; ++restart) {
    for (std::size_t k = 0; k < n; ++k) {
      z[k] = inv_diag[k] * r[k];
      p[k] = z[k];
    }
    double rz = detail::dot(r, z);
    while (it < max_iter) {
      op.apply(p, q);
      for (std::size_t k = 0; k < n; ++k)
        if (c.fixed[k])
          q[k] = 0.0;
      const double pq = detail::dot(p, q);
      if (!(pq > 0.0))
        break;
      const double alpha = rz / pq;
      double rr = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        u[k] += alpha * p[k];
        r[k] -= alpha * q[k];
        rr += r[k] * r[k];
      }
      ++it;
      if (std::sqrt(rr) / bnorm <= 0.5 * opts.tolerance)
        break;
      double rz_new = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        z[k] = inv_diag[k] * r[k];
        rz_new += r[k] * z[k];
      }
      const double beta = rz_new / rz;
      rz = rz_new;
      for (std::size_t k = 0; k < n; ++k)
        p[k] = z[k] + beta * p[k];
    }
    rel = true_residual();
  }
  stats.iterations = it;
  stats.residual = rel;
  if (!(rel <= opts.tolerance))
    throw SolverFailure("conjugate gradients did not converge: relative residual " +
                            std::to_string(rel) + " after " + std::to_string(it) + " iterations",
                        it, rel);
  return stats;
}

/// Residual force K u - f per DOF; on prescribed DOFs these are the reactions.
template <LinearOperator Op>
std::vector<double> residual_forces(const Op& op, std::span<const double> u, const BCSet& bcs) {
  std::vector<double> r(op.size());
  op.apply(u, r);
  for (const auto& [n, f] : bcs.loads) {
    r[2 * n] -= f.x();
    r[2 * n + 1] -= f.y();
  }
  return r;
}

/// Sum of reactions over `nodes`.
template <LinearOperator Op>
Vec2 reaction_force(const Op& op, std::span<const double> u, const BCSet& bcs,
                    const std::vector<std::size_t>& nodes) {
  const auto r = residual_forces(op, u, bcs);
  Vec2 sum = Vec2::Zero();
  for (std::size_t n : nodes)
    sum += Vec2(r[2 * n], r[2 * n + 1]);
  return sum;
}

/// Sparse-matrix backed operator (used by the finite-element reference).
class SparseOperator {
public:
  SparseOperator() = default;
  explicit SparseOperator(Eigen::SparseMatrix<double, Eigen::RowMajor> k) : k_(std::move(k)) {}

  std::size_t size() const { return static_cast<std::size_t>(k_.rows()); }

  void apply(std::span<const double> x, std::span<double> y) const {
    Eigen::Map<const Eigen::VectorXd> xm(x.data(), static_cast<Eigen::Index>(x.size()));
    Eigen::Map<Eigen::VectorXd> ym(y.data(), static_cast<Eigen::Index>(y.size()));
    ym.noalias() = k_ * xm;
  }

  std::vector<double> diagonal() const {
    std::vector<double> d(size());
    for (Eigen::Index k = 0; k < k_.rows(); ++k)
      d[static_cast<std::size_t>(k)] = k_.coeff(k, k);
    return d;
  }

  Eigen::SparseMatrix<double> to_sparse() const { return Eigen::SparseMatrix<double>(k_); }
  const Eigen::SparseMatrix<double, Eigen::RowMajor>& matrix() const { return k_; }

private:
  Eigen::SparseMatrix<double, Eigen::RowMajor> k_;
};

} // namespace pdsc
