#pragma once

// Body geometry, node lattice, horizon neighbor lists and ray queries.

#include <pdsc/errors.hpp>

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <unordered_map>
#include <vector>

namespace pdsc {

using Point = Eigen::Vector2d;
using Vec2 = Eigen::Vector2d;

/// Per-edge switch used when some surfaces must be ignored by ray queries
/// (e.g. surfaces covered by virtual-node buffers). Empty means all edges active.
using SurfaceMask = std::vector<bool>;

/// Flat surfaces of an axis-aligned side, named by their outward normal.
enum class Side { bottom, right, top, left };

inline Vec2 outward_normal(Side side) {
  switch (side) {
  case Side::bottom: return {0.0, -1.0};
  case Side::right: return {1.0, 0.0};
  case Side::top: return {0.0, 1.0};
  case Side::left: return {-1.0, 0.0};
  }
  return {0.0, 0.0};
}

inline const char* to_string(Side side) {
  switch (side) {
  case Side::bottom: return "bottom";
  case Side::right: return "right";
  case Side::top: return "top";
  case Side::left: return "left";
  }
  return "?";
}

/// Closed convex polygon with counterclockwise winding. Edge k runs from
/// vertex k to vertex k+1.
class Domain {
public:
  Domain() = default;

  Domain(std::vector<Point> boundary, double thickness = 1.0)
      : boundary_(std::move(boundary)), thickness_(thickness) {
    validate();
  }

  /// Axis-aligned rectangle; edges are ordered bottom, right, top, left.
  static Domain rectangle(const Point& lo, const Point& hi, double thickness = 1.0) {
    return Domain({{lo.x(), lo.y()}, {hi.x(), lo.y()}, {hi.x(), hi.y()}, {lo.x(), hi.y()}},
                  thickness);
  }

  const std::vector<Point>& boundary() const { return boundary_; }
  double thickness() const { return thickness_; }
  std::size_t edge_count() const { return boundary_.size(); }

  Point edge_start(std::size_t k) const { return boundary_[k]; }
  Point edge_end(std::size_t k) const { return boundary_[(k + 1) % boundary_.size()]; }

  Vec2 edge_normal(std::size_t k) const {
    Vec2 t = edge_end(k) - edge_start(k);
    return Vec2(t.y(), -t.x()).normalized();
  }

  double area() const {
    double a = 0.0;
    for (std::size_t k = 0; k < boundary_.size(); ++k) {
      const Point& p = edge_start(k);
      const Point& q = edge_end(k);
      a += p.x() * q.y() - q.x() * p.y();
    }
    return 0.5 * a;
  }

  double diameter() const {
    double d = 0.0;
    for (const auto& p : boundary_)
      for (const auto& q : boundary_)
        d = std::max(d, (p - q).norm());
    return d;
  }

  /// Signed distance to the boundary, positive inside. Exact for interior
  /// points of a convex polygon.
  double signed_distance(const Point& x) const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < edge_count(); ++k)
      d = std::min(d, -edge_normal(k).dot(x - edge_start(k)));
    return d;
  }

  bool contains(const Point& x, double tol) const { return signed_distance(x) >= -tol; }

  /// Index of the edge matching an axis-aligned side; throws if none.
  std::size_t side_edge(Side side) const {
    const Vec2 n = outward_normal(side);
    for (std::size_t k = 0; k < edge_count(); ++k)
      if ((edge_normal(k) - n).norm() < 1e-12)
        return k;
    throw GeometryError(std::string("domain has no flat axis-aligned ") + to_string(side) +
                        " surface");
  }

private:
  void validate() const {
    if (boundary_.size() < 3)
      throw DomainError("domain polygon needs at least three vertices");
    if (!(thickness_ > 0.0))
      throw DomainError("domain thickness must be positive");
    const double scale = diameter();
    if (!(area() > 1e-14 * scale * scale))
      throw DomainError("domain polygon must have positive area with counterclockwise winding");
    double turning = 0.0;
    for (std::size_t k = 0; k < edge_count(); ++k) {
      Vec2 a = edge_end(k) - edge_start(k);
      Vec2 b = edge_end((k + 1) % edge_count()) - edge_start((k + 1) % edge_count());
      if (a.norm() <= 1e-14 * scale)
        throw DomainError("domain polygon has a repeated vertex");
      const double cross = a.x() * b.y() - a.y() * b.x();
      if (cross < -1e-12 * a.norm() * b.norm())
        throw DomainError("domain polygon is not convex");
      turning += std::atan2(cross, a.dot(b));
    }
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6)
      throw DomainError("domain polygon is self-intersecting");
  }

  std::vector<Point> boundary_;
  double thickness_ = 1.0;
};

/// Simple square lattice: node (i, j) sits at origin + spacing * (i, j).
struct GridSpec {
  double spacing = 1.0;
  Point origin = Point::Zero();
  int nx = 1;
  int ny = 1;
};

enum class NodeRole : std::uint8_t { interior, surface, virtual_node };

inline const char* to_string(NodeRole r) {
  switch (r) {
  case NodeRole::interior: return "interior";
  case NodeRole::surface: return "surface";
  case NodeRole::virtual_node: return "virtual";
  }
  return "?";
}

struct NodeSet {
  std::vector<Point> positions;
  std::vector<double> volumes;
  /// Signed distance to the body surface (negative for virtual nodes).
  std::vector<double> boundary_distance;
  std::vector<NodeRole> roles;
  /// Integer lattice coordinates relative to the grid origin.
  std::vector<std::array<int, 2>> lattice;
  double spacing = 1.0;
  double thickness = 1.0;
  Point origin = Point::Zero();

  std::size_t size() const { return positions.size(); }
  bool is_virtual(std::size_t i) const { return roles[i] == NodeRole::virtual_node; }

  void push_back(const Point& x, double volume, double dist, NodeRole role,
                 std::array<int, 2> ij) {
    positions.push_back(x);
    volumes.push_back(volume);
    boundary_distance.push_back(dist);
    roles.push_back(role);
    lattice.push_back(ij);
  }

  /// Ids of non-virtual nodes whose lattice coordinate along `axis` equals
  /// the extreme value in the direction of `side`.
  std::vector<std::size_t> outermost_row(Side side) const {
    const int axis = (side == Side::left || side == Side::right) ? 0 : 1;
    const bool upper = (side == Side::right || side == Side::top);
    int extreme = upper ? std::numeric_limits<int>::min() : std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < size(); ++i) {
      if (is_virtual(i))
        continue;
      extreme = upper ? std::max(extreme, lattice[i][axis]) : std::min(extreme, lattice[i][axis]);
    }
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < size(); ++i)
      if (!is_virtual(i) && lattice[i][axis] == extreme)
        ids.push_back(i);
    return ids;
  }
};

/// How a node's volume is derived from its lattice cell.
enum class VolumeRule : std::uint8_t {
  clipped_cell, ///< area of the spacing-square cell inside the body, times thickness
  full_cell     ///< spacing^2 times thickness for every node
};

/// Area of the axis-aligned square of edge `h` centred at `c` that lies inside
/// the convex domain (Sutherland-Hodgman clipping against each edge).
inline double clipped_cell_area(const Domain& domain, const Point& c, double h) {
  const double r = 0.5 * h;
  std::vector<Point> poly{c + Vec2(-r, -r), c + Vec2(r, -r), c + Vec2(r, r), c + Vec2(-r, r)};
  for (std::size_t k = 0; k < domain.edge_count() && !poly.empty(); ++k) {
    const Vec2 n = domain.edge_normal(k);
    const Point a = domain.edge_start(k);
    auto inside = [&](const Point& p) { return n.dot(p - a); }; // <= 0 inside
    std::vector<Point> out;
    for (std::size_t v = 0; v < poly.size(); ++v) {
      const Point& p = poly[v];
      const Point& q = poly[(v + 1) % poly.size()];
      const double sp = inside(p), sq = inside(q);
      if (sp <= 0.0)
        out.push_back(p);
      if ((sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0))
        out.push_back(p + (sp / (sp - sq)) * (q - p));
    }
    poly = std::move(out);
  }
  double twice = 0.0;
  for (std::size_t v = 0; v < poly.size(); ++v) {
    const Point& p = poly[v];
    const Point& q = poly[(v + 1) % poly.size()];
    twice += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * std::abs(twice);
}

/// Lattice points of `spec` inside or on the domain boundary.
inline NodeSet build_grid(const Domain& domain, const GridSpec& spec,
                          VolumeRule rule = VolumeRule::clipped_cell) {
  if (!(spec.spacing > 0.0))
    throw ConfigError("grid spacing must be positive");
  if (spec.nx < 1 || spec.ny < 1)
    throw ConfigError("grid counts must be at least 1");
  NodeSet nodes;
  nodes.spacing = spec.spacing;
  nodes.thickness = domain.thickness();
  nodes.origin = spec.origin;
  const double tol = 1e-9 * spec.spacing;
  const double volume = spec.spacing * spec.spacing * domain.thickness();
  for (int j = 0; j < spec.ny; ++j) {
    for (int i = 0; i < spec.nx; ++i) {
      const Point x = spec.origin + spec.spacing * Point(i, j);
      const double dist = domain.signed_distance(x);
      if (dist < -tol)
        continue;
      const NodeRole role = dist <= tol ? NodeRole::surface : NodeRole::interior;
      double v = volume;
      if (rule == VolumeRule::clipped_cell && dist < 0.5 * std::sqrt(2.0) * spec.spacing)
        v = clipped_cell_area(domain, x, spec.spacing) * domain.thickness();
      nodes.push_back(x, v, std::max(dist, 0.0), role, {i, j});
    }
  }
  if (nodes.size() == 0)
    throw ConfigError("node grid does not intersect the domain");
  return nodes;
}

/// Grid whose outermost nodes lie on the edges of an axis-aligned rectangle.
inline GridSpec boundary_aligned_grid(const Point& lo, const Point& hi, double spacing) {
  GridSpec g;
  g.spacing = spacing;
  g.origin = lo;
  g.nx = static_cast<int>(std::lround((hi.x() - lo.x()) / spacing)) + 1;
  g.ny = static_cast<int>(std::lround((hi.y() - lo.y()) / spacing)) + 1;
  return g;
}

/// Grid with nodes at cell centres of an axis-aligned rectangle, so each
/// surface lies midway between the outermost nodes and a virtual layer.
inline GridSpec cell_centred_grid(const Point& lo, const Point& hi, double spacing) {
  GridSpec g;
  g.spacing = spacing;
  g.origin = lo + Point(0.5 * spacing, 0.5 * spacing);
  g.nx = static_cast<int>(std::lround((hi.x() - lo.x()) / spacing));
  g.ny = static_cast<int>(std::lround((hi.y() - lo.y()) / spacing));
  return g;
}

/// Appends `layers` rows of virtual nodes outside the flat surface `side`.
inline NodeSet add_virtual_layers(NodeSet nodes, const Domain& domain, Side side, int layers) {
  if (layers < 0)
    throw ConfigError("virtual layer count must be non-negative");
  if (layers == 0)
    return nodes;
  const std::size_t edge = domain.side_edge(side);
  const Vec2 n = domain.edge_normal(edge);
  const int axis = (side == Side::left || side == Side::right) ? 0 : 1;
  const int step = (side == Side::right || side == Side::top) ? 1 : -1;
  const auto row = nodes.outermost_row(side);
  const double volume = nodes.spacing * nodes.spacing * nodes.thickness;
  for (int layer = 1; layer <= layers; ++layer) {
    for (std::size_t id : row) {
      std::array<int, 2> ij = nodes.lattice[id];
      ij[axis] += step * layer;
      const Point x = nodes.origin + nodes.spacing * Point(ij[0], ij[1]);
      const double outside = n.dot(x - domain.edge_start(edge));
      nodes.push_back(x, volume, -outside, NodeRole::virtual_node, ij);
    }
  }
  return nodes;
}

struct Bond {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  Vec2 xi = Vec2::Zero();  ///< x_j - x_i
  double length = 0.0;
  Vec2 dir = Vec2::Zero(); ///< unit vector along xi
};

struct BondTable {
  std::vector<Bond> bonds;
  double horizon = 0.0;
  /// Grid spacing over horizon of the discretization the table was built on.
  double m_ratio = 0.0;

  std::size_t size() const { return bonds.size(); }
  const Bond& operator[](std::size_t b) const { return bonds[b]; }
};

/// All unordered node pairs with 0 < |x_j - x_i| <= horizon, found with a
/// cell list of cell size `horizon`. Bonds are ordered by (i, j).
inline BondTable build_bonds(const NodeSet& nodes, double horizon) {
  if (!(horizon > 0.0))
    throw ConfigError("horizon must be positive");
  BondTable table;
  table.horizon = horizon;
  table.m_ratio = nodes.spacing / horizon;
  const std::size_t n = nodes.size();
  if (n == 0)
    return table;

  Point lo = nodes.positions[0];
  for (const auto& x : nodes.positions)
    lo = lo.cwiseMin(x);
  auto cell_of = [&](const Point& x) {
    return std::array<long, 2>{static_cast<long>(std::floor((x.x() - lo.x()) / horizon)),
                               static_cast<long>(std::floor((x.y() - lo.y()) / horizon))};
  };
  auto key = [](long cx, long cy) { return (static_cast<std::int64_t>(cx) << 32) ^ (cy & 0xffffffff); };
  std::unordered_map<std::int64_t, std::vector<std::uint32_t>> cells;
  for (std::uint32_t i = 0; i < n; ++i) {
    auto c = cell_of(nodes.positions[i]);
    cells[key(c[0], c[1])].push_back(i);
  }

  const double reach = horizon * (1.0 + 1e-10);
  std::vector<std::uint32_t> found;
  for (std::uint32_t i = 0; i < n; ++i) {
    const Point& xi = nodes.positions[i];
    auto c = cell_of(xi);
    found.clear();
    for (long dy = -1; dy <= 1; ++dy) {
      for (long dx = -1; dx <= 1; ++dx) {
        auto it = cells.find(key(c[0] + dx, c[1] + dy));
        if (it == cells.end())
          continue;
        for (std::uint32_t j : it->second) {
          if (j <= i)
            continue;
          const double len = (nodes.positions[j] - xi).norm();
          if (len > 0.0 && len <= reach)
            found.push_back(j);
        }
      }
    }
    std::sort(found.begin(), found.end());
    for (std::uint32_t j : found) {
      Bond b;
      b.i = i;
      b.j = j;
      b.xi = nodes.positions[j] - xi;
      b.length = b.xi.norm();
      b.dir = b.xi / b.length;
      table.bonds.push_back(b);
    }
  }
  return table;
}

/// Distance a >= 0 from `x` along unit direction `e` to where the ray leaves
/// the (convex) domain. Edges switched off in `mask` are ignored; +inf if no
/// active edge bounds the ray.
inline double ray_boundary_distance(const Point& x, const Vec2& e, const Domain& domain,
                                    const SurfaceMask& mask = {}) {
  const double tol = 1e-9 * domain.diameter();
  if (!domain.contains(x, tol))
    throw DomainError("ray origin lies outside the domain");
  double a = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < domain.edge_count(); ++k) {
    if (!mask.empty() && !mask[k])
      continue;
    const Vec2 n = domain.edge_normal(k);
    const double approach = n.dot(e);
    if (approach <= 1e-14)
      continue;
    const double gap = std::max(0.0, n.dot(domain.edge_start(k) - x));
    a = std::min(a, gap / approach);
  }
  return a;
}

/// Horizon length along `e` truncated by the body surface: min(a, horizon).
inline double truncated_length(const Point& x, const Vec2& e, const Domain& domain,
                               double horizon, const SurfaceMask& mask = {}) {
  return std::min(ray_boundary_distance(x, e, domain, mask), horizon);
}

} // namespace pdsc
