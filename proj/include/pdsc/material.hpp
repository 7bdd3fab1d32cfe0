#pragma once

// Bulk bond-strength calibration by energy matching and the
// direction-dependent surface correction of bond strengths.

#include <pdsc/errors.hpp>
#include <pdsc/geometry.hpp>

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace pdsc {

using Strain = Eigen::Matrix2d;

enum class ProfileKind { constant, conical };

inline const char* to_string(ProfileKind k) {
  return k == ProfileKind::constant ? "constant" : "conical";
}

inline ProfileKind parse_profile(const std::string& s) {
  if (s == "constant")
    return ProfileKind::constant;
  if (s == "conical")
    return ProfileKind::conical;
  throw ConfigError("unknown micro-modulus profile '" + s + "'");
}

/// Elastic constants of the reference continuum. Bond-based peridynamics
/// pins the Poisson number: 1/3 in 2D (plane stress), 1/4 in 3D.
struct ElasticParams {
  double youngs = 1000.0;
  double poisson = 1.0 / 3.0;
  double thickness = 1.0;
  int dim = 2;

  static ElasticParams bond_based(double youngs, int dim = 2, double thickness = 1.0) {
    ElasticParams p;
    p.youngs = youngs;
    p.dim = dim;
    p.thickness = dim == 2 ? thickness : 1.0;
    p.poisson = dim == 2 ? 1.0 / 3.0 : 0.25;
    p.validate();
    return p;
  }

  void validate() const {
    if (dim != 2 && dim != 3)
      throw UnsupportedError("spatial dimension must be 2 or 3");
    if (!(youngs > 0.0) || !(thickness > 0.0))
      throw ConfigError("Young's modulus and thickness must be positive");
    const double expected = dim == 2 ? 1.0 / 3.0 : 0.25;
    if (std::abs(poisson - expected) > 1e-12)
      throw ConfigError("bond-based peridynamics requires nu = 1/3 in 2D and 1/4 in 3D");
  }
};

/// Isotropic (or cubic, for lattice-derived tensors) plane stiffness in Voigt-free
/// form: W = 1/2 [xxxx (exx^2 + eyy^2) + 2 xxyy exx eyy + 4 xyxy exy^2].
struct HookeTensor {
  double xxxx = 0.0;
  double xxyy = 0.0;
  double xyxy = 0.0;

  static HookeTensor plane_stress(double youngs, double poisson) {
    const double f = youngs / (1.0 - poisson * poisson);
    return {f, f * poisson, 0.5 * f * (1.0 - poisson)};
  }

  double energy_density(const Strain& eps) const {
    const double exx = eps(0, 0), eyy = eps(1, 1), exy = 0.5 * (eps(0, 1) + eps(1, 0));
    return 0.5 * (xxxx * (exx * exx + eyy * eyy) + 2.0 * xxyy * exx * eyy + 4.0 * xyxy * exy * exy);
  }

  /// Young's modulus and Poisson number for uniaxial stress along a lattice axis.
  double uniaxial_modulus() const { return xxxx - xxyy * xxyy / xxxx; }
  double uniaxial_poisson() const { return xxyy / xxxx; }
};

/// Radial bond-strength profile c_b(xi) with bulk amplitude c0.
struct Micromodulus {
  ProfileKind kind = ProfileKind::constant;
  double c0 = 0.0;
  double horizon = 1.0;

  double operator()(double xi) const {
    return kind == ProfileKind::constant ? c0 : c0 * (1.0 - xi / horizon);
  }
};

/// Shape of the profile, c_b(xi) / c0.
inline double profile_shape(ProfileKind kind, double xi, double horizon) {
  return kind == ProfileKind::constant ? 1.0 : 1.0 - xi / horizon;
}

/// Incomplete radial moment int_0^d shape(xi) xi^dim dxi.
inline double radial_moment(ProfileKind kind, double d, double horizon, int dim) {
  const double p = dim + 1.0;
  if (kind == ProfileKind::constant)
    return std::pow(d, p) / p;
  return std::pow(d, p) / p - std::pow(d, p + 1.0) / ((p + 1.0) * horizon);
}

enum class CalibrationMode { continuum, discrete };

inline const char* to_string(CalibrationMode m) {
  return m == CalibrationMode::continuum ? "continuum" : "discrete";
}

inline CalibrationMode parse_calibration(const std::string& s) {
  if (s == "continuum")
    return CalibrationMode::continuum;
  if (s == "discrete")
    return CalibrationMode::discrete;
  throw ConfigError("unknown calibration mode '" + s + "'");
}

/// Lattice offsets of a simple square (2D) or cubic (3D) lattice within the
/// closed horizon ball, in units of the spacing.
inline std::vector<Eigen::Vector3d> lattice_offsets(double horizon_over_spacing, int dim) {
  const int r = static_cast<int>(std::floor(horizon_over_spacing + 1e-9));
  const double reach2 = horizon_over_spacing * horizon_over_spacing * (1.0 + 2e-10);
  std::vector<Eigen::Vector3d> out;
  const int rz = dim == 3 ? r : 0;
  for (int k = -rz; k <= rz; ++k)
    for (int j = -r; j <= r; ++j)
      for (int i = -r; i <= r; ++i) {
        const double n2 = double(i) * i + double(j) * j + double(k) * k;
        if (n2 > 0.0 && n2 <= reach2)
          out.emplace_back(i, j, k);
      }
  return out;
}

/// Stiffness moments of a bulk lattice node: sum over the horizon of
/// shape(xi) xi e_x^4 and shape(xi) xi e_x^2 e_y^2, times the node volume.
struct LatticeMoments {
  double axial = 0.0;
  double cross = 0.0;
};

inline LatticeMoments lattice_moments(ProfileKind kind, double horizon, double spacing,
                                      double thickness, int dim) {
  LatticeMoments m;
  const double volume = dim == 2 ? spacing * spacing * thickness : spacing * spacing * spacing;
  for (const auto& o : lattice_offsets(horizon / spacing, dim)) {
    const double xi = spacing * o.norm();
    const Eigen::Vector3d e = o.normalized();
    const double w = profile_shape(kind, xi, horizon) * xi * volume;
    m.axial += w * std::pow(e.x(), 4);
    m.cross += w * e.x() * e.x() * e.y() * e.y();
  }
  return m;
}

struct CalibrationReport {
  double c0 = 0.0;
  CalibrationMode mode = CalibrationMode::discrete;
  ProfileKind kind = ProfileKind::constant;
  double continuum_c0 = 0.0;
  /// Hooke tensor of the reference continuum.
  HookeTensor reference;
  /// Bulk stiffness actually realised (lattice sums for discrete mode).
  HookeTensor bulk;
  /// Max relative mismatch of bulk energy against the reference over
  /// uniaxial, biaxial and shear probe strains.
  double residual = 0.0;
};

/// Energy-matching constant 2 C_xxxx / (t * radial moment * int cos^4 dOmega).
inline double continuum_c0(const ElasticParams& p, ProfileKind kind, double horizon) {
  p.validate();
  if (!(horizon > 0.0))
    throw ConfigError("horizon must be positive");
  double axial_stiffness = 0.0, angular = 0.0, thick = 1.0;
  if (p.dim == 2) {
    axial_stiffness = HookeTensor::plane_stress(p.youngs, p.poisson).xxxx;
    angular = 3.0 * std::numbers::pi / 4.0;
    thick = p.thickness;
  } else {
    const double lambda = p.youngs * p.poisson / ((1.0 + p.poisson) * (1.0 - 2.0 * p.poisson));
    const double mu = p.youngs / (2.0 * (1.0 + p.poisson));
    axial_stiffness = lambda + 2.0 * mu;
    angular = 4.0 * std::numbers::pi / 5.0;
  }
  return 2.0 * axial_stiffness / (thick * radial_moment(kind, horizon, horizon, p.dim) * angular);
}

/// Bulk Hooke tensor realised by a lattice node with amplitude c0 (2D).
inline HookeTensor lattice_hooke(double c0, const LatticeMoments& m) {
  return {0.5 * c0 * m.axial, 0.5 * c0 * m.cross, 0.5 * c0 * m.cross};
}

/// Calibrates c0 so that the bulk energy density of affine deformations
/// matches 1/2 eps:H:eps. Discrete mode matches the lattice sum exactly for
/// uniaxial strain; `spacing` is required there.
inline CalibrationReport calibrate_bulk(const ElasticParams& p, ProfileKind kind, double horizon,
                                        CalibrationMode mode,
                                        std::optional<double> spacing = std::nullopt) {
  CalibrationReport r;
  r.mode = mode;
  r.kind = kind;
  r.continuum_c0 = continuum_c0(p, kind, horizon);
  r.c0 = r.continuum_c0;
  if (p.dim == 2)
    r.reference = HookeTensor::plane_stress(p.youngs, p.poisson);
  if (mode == CalibrationMode::continuum) {
    r.bulk = r.reference;
    if (p.dim == 2 && spacing) {
      // Report what the lattice would realise with the continuum constant.
      r.bulk = lattice_hooke(r.c0, lattice_moments(kind, horizon, *spacing, p.thickness, 2));
    }
  } else {
    if (!spacing || !(*spacing > 0.0))
      throw ConfigError("discrete calibration needs the lattice spacing");
    if (p.dim != 2)
      throw UnsupportedError("discrete calibration is implemented for 2D lattices");
    const LatticeMoments m = lattice_moments(kind, horizon, *spacing, p.thickness, 2);
    if (!(m.axial > 0.0))
      throw ConfigError("horizon contains no lattice neighbors");
    r.c0 = 2.0 * r.reference.xxxx / m.axial;
    r.bulk = lattice_hooke(r.c0, m);
  }
  if (p.dim == 2) {
    const Strain probes[] = {
        (Strain() << 1, 0, 0, 0).finished(), (Strain() << 0, 0, 0, 1).finished(),
        (Strain() << 1, 0, 0, 1).finished(), (Strain() << 0, 0.5, 0.5, 0).finished(),
        (Strain() << 1, 0, 0, -1.0 / 3.0).finished()};
    for (const auto& eps : probes) {
      const double ref = r.reference.energy_density(eps);
      r.residual = std::max(r.residual, std::abs(r.bulk.energy_density(eps) - ref) / ref);
    }
  }
  return r;
}

/// Surface correction factor for a truncated horizon length d: ratio of the
/// full to the truncated radial moment; (horizon/d)^(dim+1) for a constant profile.
inline double correction_factor_from_length(double d, double horizon, ProfileKind kind, int dim) {
  if (!(d > 0.0))
    throw GeometryError("truncated horizon length must be positive");
  if (d >= horizon)
    return 1.0;
  if (kind == ProfileKind::constant)
    return std::pow(horizon / d, dim + 1);
  return radial_moment(kind, horizon, horizon, dim) / radial_moment(kind, d, horizon, dim);
}

inline double correction_factor(const Point& x, const Vec2& e, const Domain& domain,
                                double horizon, ProfileKind kind, const SurfaceMask& mask = {}) {
  return correction_factor_from_length(truncated_length(x, e, domain, horizon, mask), horizon,
                                       kind, 2);
}

struct BondCorrection {
  double phi_i = 1.0; ///< factor at x_i along +e
  double phi_j = 1.0; ///< factor at x_j along -e
  double bulk = 0.0;  ///< c_b(xi)
  double coeff = 0.0; ///< c_ij = c_b (phi_i + phi_j) / 2

  double endpoint_coeff(bool at_i) const { return bulk * (at_i ? phi_i : phi_j); }
};

struct CorrectionField {
  std::vector<BondCorrection> bonds;

  std::size_t size() const { return bonds.size(); }
  const BondCorrection& operator[](std::size_t b) const { return bonds[b]; }
};

struct CorrectionOptions {
  bool enabled = true;
  /// Surfaces that truncate horizons; empty means all edges.
  SurfaceMask mask;
};

/// Per-bond corrected coefficients. Virtual endpoints keep phi = 1.
inline CorrectionField correct_bonds(const BondTable& bonds, const NodeSet& nodes,
                                     const Domain& domain, const Micromodulus& mm,
                                     const CorrectionOptions& opts = {}) {
  CorrectionField field;
  field.bonds.resize(bonds.size());
  const double horizon = bonds.horizon;
  for (std::size_t b = 0; b < bonds.size(); ++b) {
    const Bond& bond = bonds[b];
    BondCorrection& c = field.bonds[b];
    c.bulk = mm(bond.length);
    if (opts.enabled) {
      auto endpoint = [&](std::uint32_t node, const Vec2& e) {
        if (nodes.is_virtual(node))
          return 1.0;
        const double d = truncated_length(nodes.positions[node], e, domain, horizon, opts.mask);
        if (d < bond.length * (1.0 - 1e-9))
          throw GeometryError("bond " + std::to_string(bond.i) + "-" + std::to_string(bond.j) +
                              " leaves the body");
        return correction_factor_from_length(d, horizon, mm.kind, 2);
      };
      c.phi_i = endpoint(bond.i, bond.dir);
      c.phi_j = endpoint(bond.j, -bond.dir);
    }
    c.coeff = 0.5 * c.bulk * (c.phi_i + c.phi_j);
  }
  return field;
}

} // namespace pdsc
