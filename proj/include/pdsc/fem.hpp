#pragma once

// Plane-stress Q4 finite elements on a regular square grid.

#include <pdsc/geometry.hpp>
#include <pdsc/material.hpp>
#include <pdsc/solver.hpp>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace pdsc::fem {

using ElementMatrix = Eigen::Matrix<double, 8, 8>;
using ElementVector = Eigen::Matrix<double, 8, 1>;

/// Nodes on the lattice of a GridSpec, square elements of edge `spacing`.
struct FEMesh {
  int nx = 0; ///< nodes along x
  int ny = 0;
  double spacing = 1.0;
  Point origin = Point::Zero();
  std::vector<Point> positions;
  /// Counterclockwise node ids starting at the lower-left corner.
  std::vector<std::array<std::uint32_t, 4>> elements;

  std::size_t num_nodes() const { return positions.size(); }
  std::size_t node(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }

  static FEMesh from_grid(const GridSpec& g) {
    if (g.nx < 2 || g.ny < 2)
      throw ConfigError("finite-element mesh needs at least 2x2 nodes");
    if (!(g.spacing > 0.0))
      throw ConfigError("grid spacing must be positive");
    FEMesh m;
    m.nx = g.nx;
    m.ny = g.ny;
    m.spacing = g.spacing;
    m.origin = g.origin;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        m.positions.push_back(g.origin + g.spacing * Point(i, j));
    for (int j = 0; j + 1 < g.ny; ++j)
      for (int i = 0; i + 1 < g.nx; ++i) {
        const auto n0 = static_cast<std::uint32_t>(m.node(i, j));
        m.elements.push_back({n0, n0 + 1, n0 + 1 + static_cast<std::uint32_t>(g.nx),
                              n0 + static_cast<std::uint32_t>(g.nx)});
      }
    return m;
  }

  /// Node ids along one side of the rectangle.
  std::vector<std::size_t> side_nodes(Side side) const {
    std::vector<std::size_t> ids;
    switch (side) {
    case Side::bottom:
      for (int i = 0; i < nx; ++i) ids.push_back(node(i, 0));
      break;
    case Side::top:
      for (int i = 0; i < nx; ++i) ids.push_back(node(i, ny - 1));
      break;
    case Side::left:
      for (int j = 0; j < ny; ++j) ids.push_back(node(0, j));
      break;
    case Side::right:
      for (int j = 0; j < ny; ++j) ids.push_back(node(nx - 1, j));
      break;
    }
    return ids;
  }
};

struct PlaneStressLaw {
  double youngs = 1000.0;
  double poisson = 1.0 / 3.0;
  double thickness = 1.0;

  /// Stress from engineering strain (exx, eyy, gxy).
  Eigen::Matrix3d matrix() const {
    const double f = youngs / (1.0 - poisson * poisson);
    Eigen::Matrix3d d;
    d << f, f * poisson, 0.0, f * poisson, f, 0.0, 0.0, 0.0, f * (1.0 - poisson) / 2.0;
    return d;
  }
};

namespace detail {

inline constexpr double gauss = 0.57735026918962576451; // 1/sqrt(3)
inline constexpr std::array<double, 4> ref_x{-1.0, 1.0, 1.0, -1.0};
inline constexpr std::array<double, 4> ref_y{-1.0, -1.0, 1.0, 1.0};

/// Strain-displacement matrix of a square element of edge h at (s, t).
inline Eigen::Matrix<double, 3, 8> strain_matrix(double h, double s, double t) {
  Eigen::Matrix<double, 3, 8> b = Eigen::Matrix<double, 3, 8>::Zero();
  for (int a = 0; a < 4; ++a) {
    const double dx = 0.25 * ref_x[a] * (1.0 + ref_y[a] * t) * (2.0 / h);
    const double dy = 0.25 * ref_y[a] * (1.0 + ref_x[a] * s) * (2.0 / h);
    b(0, 2 * a) = dx;
    b(1, 2 * a + 1) = dy;
    b(2, 2 * a) = dy;
    b(2, 2 * a + 1) = dx;
  }
  return b;
}

} // namespace detail

/// 2x2 Gauss stiffness of one square element.
inline ElementMatrix element_stiffness(double h, const PlaneStressLaw& law) {
  const Eigen::Matrix3d d = law.matrix();
  const double jac = 0.25 * h * h;
  ElementMatrix k = ElementMatrix::Zero();
  for (double s : {-detail::gauss, detail::gauss})
    for (double t : {-detail::gauss, detail::gauss}) {
      const auto b = detail::strain_matrix(h, s, t);
      k += b.transpose() * d * b * jac * law.thickness;
    }
  return k;
}

inline ElementVector gather(const FEMesh& mesh, std::size_t e, std::span<const double> u) {
  ElementVector ue;
  for (int a = 0; a < 4; ++a) {
    ue(2 * a) = u[2 * mesh.elements[e][a]];
    ue(2 * a + 1) = u[2 * mesh.elements[e][a] + 1];
  }
  return ue;
}

inline SparseOperator fem_assemble(const FEMesh& mesh, const PlaneStressLaw& law) {
  const ElementMatrix ke = element_stiffness(mesh.spacing, law);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(mesh.elements.size() * 64);
  for (const auto& el : mesh.elements)
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b)
        t.emplace_back(static_cast<int>(2 * el[a / 2] + a % 2), static_cast<int>(2 * el[b / 2] + b % 2),
                       ke(a, b));
  const auto n = static_cast<Eigen::Index>(2 * mesh.num_nodes());
  Eigen::SparseMatrix<double, Eigen::RowMajor> k(n, n);
  k.setFromTriplets(t.begin(), t.end());
  return SparseOperator(std::move(k));
}

inline SolveStats fem_solve(const SparseOperator& k, const BCSet& bcs, std::vector<double>& u,
                            const SolverOptions& opts = {}) {
  return solve_constrained(k, bcs, u, opts);
}

/// Stress (sxx, syy, sxy) at the four Gauss points of element `e`.
inline std::array<Eigen::Vector3d, 4> element_stresses(const FEMesh& mesh, const PlaneStressLaw& law,
                                                       std::size_t e, std::span<const double> u) {
  const ElementVector ue = gather(mesh, e, u);
  const Eigen::Matrix3d d = law.matrix();
  std::array<Eigen::Vector3d, 4> out;
  int g = 0;
  for (double t : {-detail::gauss, detail::gauss})
    for (double s : {-detail::gauss, detail::gauss})
      out[g++] = d * detail::strain_matrix(mesh.spacing, s, t) * ue;
  return out;
}

/// Element strain energies 1/2 u_e^T K_e u_e.
inline std::vector<double> element_energies(const FEMesh& mesh, const PlaneStressLaw& law,
                                            std::span<const double> u) {
  const ElementMatrix ke = element_stiffness(mesh.spacing, law);
  std::vector<double> out(mesh.elements.size());
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    const ElementVector ue = gather(mesh, e, u);
    out[e] = 0.5 * ue.dot(ke * ue);
  }
  return out;
}

/// Nodal energy density: average of the adjacent elements' energy densities
/// (all elements have equal volume).
inline std::vector<double> fem_energy_density(const FEMesh& mesh, const PlaneStressLaw& law,
                                              std::span<const double> u) {
  const auto energies = element_energies(mesh, law, u);
  const double volume = mesh.spacing * mesh.spacing * law.thickness;
  std::vector<double> sum(mesh.num_nodes(), 0.0);
  std::vector<int> count(mesh.num_nodes(), 0);
  for (std::size_t e = 0; e < mesh.elements.size(); ++e)
    for (auto n : mesh.elements[e]) {
      sum[n] += energies[e] / volume;
      ++count[n];
    }
  for (std::size_t n = 0; n < sum.size(); ++n)
    if (count[n] > 0)
      sum[n] /= count[n];
  return sum;
}

} // namespace pdsc::fem
