#pragma once

// Linear bond-based peridynamic operator, energies and diagnostics.

#include <pdsc/geometry.hpp>
#include <pdsc/material.hpp>
#include <pdsc/solver.hpp>

#include <Eigen/Sparse>

#include <span>
#include <vector>

namespace pdsc {

/// Matrix-free stiffness K = sum over bonds of k_b [e e^T] coupling (i, j),
/// with k_b = c_ij V_i V_j / xi. Nodal internal force is -(K u)_i.
class BondOperator {
public:
  struct Entry {
    std::uint32_t i;
    std::uint32_t j;
    double k;
    double ex;
    double ey;
  };

  BondOperator() = default;
  BondOperator(std::size_t num_nodes, std::vector<Entry> entries)
      : num_nodes_(num_nodes), entries_(std::move(entries)) {}

  std::size_t size() const { return 2 * num_nodes_; }
  std::size_t num_nodes() const { return num_nodes_; }
  const std::vector<Entry>& entries() const { return entries_; }

  void apply(std::span<const double> u, std::span<double> y) const {
    std::fill(y.begin(), y.end(), 0.0);
    for (const Entry& b : entries_) {
      const double dx = u[2 * b.i] - u[2 * b.j];
      const double dy = u[2 * b.i + 1] - u[2 * b.j + 1];
      const double s = b.k * (b.ex * dx + b.ey * dy);
      const double fx = s * b.ex, fy = s * b.ey;
      y[2 * b.i] += fx;
      y[2 * b.i + 1] += fy;
      y[2 * b.j] -= fx;
      y[2 * b.j + 1] -= fy;
    }
  }

  std::vector<double> diagonal() const {
    std::vector<double> d(size(), 0.0);
    for (const Entry& b : entries_) {
      d[2 * b.i] += b.k * b.ex * b.ex;
      d[2 * b.i + 1] += b.k * b.ey * b.ey;
      d[2 * b.j] += b.k * b.ex * b.ex;
      d[2 * b.j + 1] += b.k * b.ey * b.ey;
    }
    return d;
  }

  Eigen::SparseMatrix<double> to_sparse() const {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(entries_.size() * 16);
    for (const Entry& b : entries_) {
      const double e[2] = {b.ex, b.ey};
      const int idx[2] = {static_cast<int>(2 * b.i), static_cast<int>(2 * b.j)};
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) {
          const double sign = p == q ? 1.0 : -1.0;
          for (int a = 0; a < 2; ++a)
            for (int c = 0; c < 2; ++c)
              t.emplace_back(idx[p] + a, idx[q] + c, sign * b.k * e[a] * e[c]);
        }
    }
    Eigen::SparseMatrix<double> k(static_cast<Eigen::Index>(size()),
                                  static_cast<Eigen::Index>(size()));
    k.setFromTriplets(t.begin(), t.end());
    return k;
  }

private:
  std::size_t num_nodes_ = 0;
  std::vector<Entry> entries_;
};

inline BondOperator assemble(const NodeSet& nodes, const BondTable& bonds,
                             const CorrectionField& field) {
  if (field.size() != bonds.size())
    throw ConfigError("correction field does not match the bond table");
  std::vector<BondOperator::Entry> entries;
  entries.reserve(bonds.size());
  for (std::size_t b = 0; b < bonds.size(); ++b) {
    const Bond& bond = bonds[b];
    const double k = field[b].coeff * nodes.volumes[bond.i] * nodes.volumes[bond.j] / bond.length;
    entries.push_back({bond.i, bond.j, k, bond.dir.x(), bond.dir.y()});
  }
  return BondOperator(nodes.size(), std::move(entries));
}

inline Vec2 node_vec(std::span<const double> u, std::size_t i) { return {u[2 * i], u[2 * i + 1]}; }

/// Per-node strain-energy density W_i = 1/4 sum_j c(x_i, xi)/xi [e.(u_j - u_i)]^2 V_j,
/// each endpoint using its own corrected strength c_b phi(x_i, e).
inline std::vector<double> strain_energy_density(const NodeSet& nodes, const BondTable& bonds,
                                                 const CorrectionField& field,
                                                 std::span<const double> u) {
  std::vector<double> w(nodes.size(), 0.0);
  for (std::size_t b = 0; b < bonds.size(); ++b) {
    const Bond& bond = bonds[b];
    const double stretch = bond.dir.dot(node_vec(u, bond.j) - node_vec(u, bond.i));
    const double base = 0.25 * stretch * stretch / bond.length;
    w[bond.i] += base * field[b].endpoint_coeff(true) * nodes.volumes[bond.j];
    w[bond.j] += base * field[b].endpoint_coeff(false) * nodes.volumes[bond.i];
  }
  return w;
}

/// Bonds whose deformed vector has non-positive projection on the reference vector.
inline std::vector<std::size_t> check_bond_inversion(const BondTable& bonds,
                                                     std::span<const double> u) {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < bonds.size(); ++b) {
    const Bond& bond = bonds[b];
    const Vec2 deformed = bond.xi + node_vec(u, bond.j) - node_vec(u, bond.i);
    if (deformed.dot(bond.xi) <= 0.0)
      out.push_back(b);
  }
  return out;
}

struct FieldResult {
  std::vector<double> u;
  std::vector<double> energy_density;
  SolveStats stats;
  std::vector<std::size_t> inverted_bonds;
};

/// Solves the constrained static problem and evaluates energies and inversion.
inline FieldResult solve_static(const NodeSet& nodes, const BondTable& bonds,
                                const CorrectionField& field, const BondOperator& k,
                                const BCSet& bcs, const SolverOptions& opts = {}) {
  FieldResult r;
  r.stats = solve_constrained(k, bcs, r.u, opts);
  r.energy_density = strain_energy_density(nodes, bonds, field, r.u);
  r.inverted_bonds = check_bond_inversion(bonds, r.u);
  return r;
}

} // namespace pdsc
