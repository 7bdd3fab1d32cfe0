#pragma once

// Closed-form reference fields, error metrics and a dense direct solver
// used to cross-check the iterative one.

#include <pdsc/errors.hpp>
#include <pdsc/geometry.hpp>
#include <pdsc/solver.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <span>
#include <vector>

namespace pdsc::analytic {

/// u(x) = eps (x - origin); rotations carry no energy and are left out.
struct AffineField {
  Eigen::Matrix2d strain = Eigen::Matrix2d::Zero();
  Point origin = Point::Zero();

  Vec2 displacement(const Point& x) const { return strain * (x - origin); }

  std::vector<double> sample(const std::vector<Point>& points) const {
    std::vector<double> u(2 * points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      const Vec2 v = displacement(points[i]);
      u[2 * i] = v.x();
      u[2 * i + 1] = v.y();
    }
    return u;
  }
};

/// Uniaxial stress `stress` along y: u_y = (s/E) y, u_x = -nu (s/E) x about `origin`.
inline AffineField uniaxial_solution(double youngs, double poisson, double stress,
                                     const Point& origin = Point::Zero()) {
  AffineField f;
  f.origin = origin;
  f.strain(1, 1) = stress / youngs;
  f.strain(0, 0) = -poisson * stress / youngs;
  return f;
}

struct ErrorField {
  std::vector<double> err_x;
  std::vector<double> err_y;
  std::vector<bool> included_x;
  std::vector<bool> included_y;
  double max_x = 0.0;
  double max_y = 0.0;
  std::size_t argmax_x = 0;
  std::size_t argmax_y = 0;

  std::size_t size() const { return err_x.size(); }
};

/// Component-wise |u_num - u_ref| / |u_ref|; components with |u_ref| below
/// `tol_zero` are excluded (error reported as 0, flag false).
inline ErrorField relative_error_field(std::span<const double> u_num, std::span<const double> u_ref,
                                       double tol_zero = 1e-12) {
  if (u_num.size() != u_ref.size() || u_num.size() % 2 != 0)
    throw ConfigError("error field inputs have mismatched node sets");
  const std::size_t n = u_num.size() / 2;
  ErrorField f;
  f.err_x.assign(n, 0.0);
  f.err_y.assign(n, 0.0);
  f.included_x.assign(n, false);
  f.included_y.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (int a = 0; a < 2; ++a) {
      const double ref = u_ref[2 * i + a];
      if (std::abs(ref) < tol_zero)
        continue;
      const double e = std::abs(u_num[2 * i + a] - ref) / std::abs(ref);
      auto& err = a == 0 ? f.err_x : f.err_y;
      auto& inc = a == 0 ? f.included_x : f.included_y;
      auto& mx = a == 0 ? f.max_x : f.max_y;
      auto& arg = a == 0 ? f.argmax_x : f.argmax_y;
      err[i] = e;
      inc[i] = true;
      if (e > mx) {
        mx = e;
        arg = i;
      }
    }
  }
  return f;
}

/// Dense direct solve of the constrained system (small problems only).
/// Throws RankDeficientError if the free block is singular.
template <LinearOperator Op>
std::vector<double> dense_oracle_solve(const Op& op, const BCSet& bcs) {
  const std::size_t n = op.size();
  if (n > 4000)
    throw ConfigError("dense oracle is limited to small systems");
  const DofConstraints c(bcs, n);
  const Eigen::MatrixXd k = Eigen::MatrixXd(op.to_sparse());
  std::vector<Eigen::Index> free;
  for (std::size_t d = 0; d < n; ++d)
    if (!c.fixed[d])
      free.push_back(static_cast<Eigen::Index>(d));
  std::vector<double> u(n, 0.0);
  for (std::size_t d = 0; d < n; ++d)
    if (c.fixed[d])
      u[d] = c.value[d];
  if (free.empty())
    return u;

  const auto nf = static_cast<Eigen::Index>(free.size());
  Eigen::MatrixXd kff(nf, nf);
  Eigen::VectorXd b(nf);
  for (Eigen::Index a = 0; a < nf; ++a) {
    b(a) = c.rhs[static_cast<std::size_t>(free[a])];
    for (std::size_t d = 0; d < n; ++d)
      if (c.fixed[d])
        b(a) -= k(free[a], static_cast<Eigen::Index>(d)) * c.value[d];
    for (Eigen::Index q = 0; q < nf; ++q)
      kff(a, q) = k(free[a], free[q]);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(kff);
  qr.setThreshold(1e-10);
  if (qr.rank() < nf)
    throw RankDeficientError("constrained system is rank deficient", qr.rank(), nf);
  const Eigen::VectorXd x = qr.solve(b);
  for (Eigen::Index a = 0; a < nf; ++a)
    u[static_cast<std::size_t>(free[a])] = x(a);
  return u;
}

} // namespace pdsc::analytic
