#pragma once

// The benchmark experiments: simple tension against the uniaxial solution,
// the clamped square sheet against finite elements, and cylindrical
// indentation. Each run returns a summary plus the CSV tables behind it.

#include <pdsc/analytic.hpp>
#include <pdsc/config.hpp>
#include <pdsc/fem.hpp>
#include <pdsc/geometry.hpp>
#include <pdsc/indentation.hpp>
#include <pdsc/io.hpp>
#include <pdsc/material.hpp>
#include <pdsc/pd_core.hpp>
#include <pdsc/solver.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace pdsc::bench {

struct RunResult {
  io::Summary summary;
  /// variant -> file name -> table
  std::map<std::string, std::map<std::string, io::CsvTable>> artifacts;
  /// True if any variant stopped on bond inversion.
  bool inversion_abort = false;

  const io::CsvTable& table(const std::string& variant, const std::string& file) const {
    auto v = artifacts.find(variant);
    if (v == artifacts.end() || !v->second.count(file))
      throw ConfigError("no artifact " + variant + "/" + file);
    return v->second.at(file);
  }
};

/// Writes summary.txt and one subdirectory per variant.
inline void write_run(const RunResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  r.summary.write(dir / "summary.txt");
  for (const auto& [variant, files] : r.artifacts) {
    const auto sub = variant.empty() ? dir : dir / variant;
    std::filesystem::create_directories(sub);
    for (const auto& [name, table] : files)
      table.write(sub / name);
  }
}

namespace detail {

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline SolverOptions solver_options(const ExperimentConfig& c) {
  return {c.tolerance, c.max_iterations};
}

inline ElasticParams elastic(const ExperimentConfig& c) {
  return ElasticParams::bond_based(c.youngs, 2, c.thickness);
}

inline CalibrationReport calibrate(const ExperimentConfig& c) {
  return calibrate_bulk(elastic(c), c.profile, c.horizon, c.calibration, c.spacing);
}

inline void echo_config(io::Summary& s, const ExperimentConfig& c) {
  s.set("experiment", to_string(c.experiment));
  s.set("youngs_MPa", c.youngs);
  s.set("thickness_mm", c.thickness);
  s.set("spacing_mm", c.spacing);
  s.set("horizon_mm", c.horizon);
  s.set("m", c.m());
  s.set("profile", to_string(c.profile));
  s.set("calibration", to_string(c.calibration));
  if (c.experiment == Experiment::calibrate)
    return;
  s.set("volumes", c.volumes == VolumeRule::clipped_cell ? "clipped" : "full");
  s.set("width_mm", c.width);
  s.set("height_mm", c.height);
  std::string vs;
  for (const auto& v : c.variants)
    vs += (vs.empty() ? "" : ",") + v;
  s.set("variants", vs);
  s.set("solver_tolerance", c.tolerance);
}

inline void report_calibration(io::Summary& s, const CalibrationReport& r) {
  s.set("c0", r.c0);
  s.set("c0_continuum", r.continuum_c0);
  s.set("calibration_residual", r.residual);
  s.set("bulk_youngs_MPa", r.bulk.uniaxial_modulus());
  s.set("bulk_poisson", r.bulk.uniaxial_poisson());
}

inline io::CsvTable nodes_table(const NodeSet& nodes) {
  io::CsvTable t({"id", "x", "y", "volume", "role"});
  for (std::size_t i = 0; i < nodes.size(); ++i)
    t.add(i, nodes.positions[i].x(), nodes.positions[i].y(), nodes.volumes[i],
          to_string(nodes.roles[i]));
  return t;
}

inline io::CsvTable bonds_table(const BondTable& bonds, const CorrectionField& field) {
  io::CsvTable t({"i", "j", "xi_x", "xi_y", "len", "phi_i", "phi_j", "c_ij"});
  for (std::size_t b = 0; b < bonds.size(); ++b)
    t.add(bonds[b].i, bonds[b].j, bonds[b].xi.x(), bonds[b].xi.y(), bonds[b].length,
          field[b].phi_i, field[b].phi_j, field[b].coeff);
  return t;
}

/// One row per node selected by `keep`.
template <class Keep>
io::CsvTable fields_table(const std::vector<Point>& positions, std::span<const double> u,
                          const std::vector<double>& w, const std::string& source, Keep keep) {
  io::CsvTable t({"id", "x", "y", "ux", "uy", "W", "source"});
  for (std::size_t i = 0; i < positions.size(); ++i)
    if (keep(i))
      t.add(i, positions[i].x(), positions[i].y(), u[2 * i], u[2 * i + 1], w[i], source);
  return t;
}

inline io::CsvTable reactions_table(const std::vector<Point>& positions,
                                    const std::vector<double>& residual,
                                    const std::vector<std::size_t>& ids) {
  io::CsvTable t({"id", "x", "y", "fx", "fy"});
  for (std::size_t n : ids)
    t.add(n, positions[n].x(), positions[n].y(), residual[2 * n], residual[2 * n + 1]);
  return t;
}

/// Node with the largest energy density among those selected by `keep`.
template <class Keep>
std::size_t argmax_energy(const std::vector<double>& w, Keep keep) {
  std::size_t best = 0;
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < w.size(); ++i)
    if (keep(i) && w[i] > top) {
      top = w[i];
      best = i;
    }
  return best;
}

/// True if node `n` lies within `reach` lattice steps of the extreme
/// coordinates along both axes among the non-virtual nodes.
inline bool is_corner(const NodeSet& nodes, std::size_t n, int reach = 0) {
  int lo[2] = {std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};
  int hi[2] = {std::numeric_limits<int>::min(), std::numeric_limits<int>::min()};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes.is_virtual(i))
      continue;
    for (int a = 0; a < 2; ++a) {
      lo[a] = std::min(lo[a], nodes.lattice[i][a]);
      hi[a] = std::max(hi[a], nodes.lattice[i][a]);
    }
  }
  for (int a = 0; a < 2; ++a)
    if (nodes.lattice[n][a] - lo[a] > reach && hi[a] - nodes.lattice[n][a] > reach)
      return false;
  return true;
}

inline std::size_t nearest_node(const NodeSet& nodes, const Point& x) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if ((nodes.positions[i] - x).squaredNorm() < (nodes.positions[best] - x).squaredNorm())
      best = i;
  return best;
}

inline std::size_t find_lattice(const NodeSet& nodes, std::array<int, 2> ij) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes.lattice[i] == ij)
      return i;
  throw ConfigError("lattice node not found");
}

/// Equal nodal forces along an edge row, half weight on the two end nodes,
/// summing to `total`.
inline void edge_traction(BCSet& bcs, const NodeSet& nodes, const std::vector<std::size_t>& row,
                          const Vec2& total) {
  if (row.size() < 2)
    throw ConfigError("loaded edge needs at least two nodes");
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  for (std::size_t n : row) {
    lo = std::min(lo, nodes.lattice[n][0]);
    hi = std::max(hi, nodes.lattice[n][0]);
  }
  const Vec2 f = total / static_cast<double>(row.size() - 1);
  for (std::size_t n : row) {
    const bool end = nodes.lattice[n][0] == lo || nodes.lattice[n][0] == hi;
    bcs.load(n, end ? Vec2(0.5 * f) : f);
  }
}

} // namespace detail

// ---------------------------------------------------------------------------

inline RunResult run_tension(const ExperimentConfig& c) {
  c.validate();
  detail::Stopwatch total;
  RunResult r;
  auto& s = r.summary;
  detail::echo_config(s, c);
  s.set("traction_MPa", c.traction);
  s.set("analytic_moduli", c.analytic_moduli);

  const Point lo(-0.5 * c.width, -0.5 * c.height), hi(0.5 * c.width, 0.5 * c.height);
  const Domain domain = Domain::rectangle(lo, hi, c.thickness);
  const NodeSet nodes = build_grid(domain, boundary_aligned_grid(lo, hi, c.spacing), c.volumes);
  const BondTable bonds = build_bonds(nodes, c.horizon);
  const CalibrationReport cal = detail::calibrate(c);
  detail::report_calibration(s, cal);
  s.set("nodes", nodes.size());
  s.set("bonds", bonds.size());
  const Micromodulus mm{c.profile, cal.c0, c.horizon};

  const double e_ref = c.analytic_moduli == "lattice" ? cal.bulk.uniaxial_modulus() : c.youngs;
  const double nu_ref = c.analytic_moduli == "lattice" ? cal.bulk.uniaxial_poisson() : 1.0 / 3.0;
  s.set("analytic_youngs_MPa", e_ref);
  s.set("analytic_poisson", nu_ref);

  // Rigid modes: pin the centre node and the x motion of its upper neighbour.
  const std::size_t centre = detail::nearest_node(nodes, 0.5 * (lo + hi));
  auto above = nodes.lattice[centre];
  ++above[1];
  const std::size_t partner = detail::find_lattice(nodes, above);
  BCSet bcs;
  bcs.fix(centre);
  bcs.prescribe(partner, axis_x, Vec2::Zero());
  const double force = c.traction * c.width * c.thickness;
  detail::edge_traction(bcs, nodes, nodes.outermost_row(Side::top), Vec2(0.0, force));
  detail::edge_traction(bcs, nodes, nodes.outermost_row(Side::bottom), Vec2(0.0, -force));

  const auto reference =
      analytic::uniaxial_solution(e_ref, nu_ref, c.traction, nodes.positions[centre])
          .sample(nodes.positions);

  for (const auto& variant : c.variants) {
    detail::Stopwatch watch;
    const CorrectionField field =
        correct_bonds(bonds, nodes, domain, mm, {variant == "corrected", {}});
    const BondOperator k = assemble(nodes, bonds, field);
    const FieldResult res = solve_static(nodes, bonds, field, k, bcs, detail::solver_options(c));
    const auto err = analytic::relative_error_field(res.u, reference, c.tol_zero);

    auto& files = r.artifacts[variant];
    files.emplace("fields.csv", detail::fields_table(nodes.positions, res.u, res.energy_density,
                                                     "pd_" + variant,
                                                     [](std::size_t) { return true; }));
    io::CsvTable errors({"id", "x", "y", "err_ux", "err_uy", "included_ux", "included_uy"});
    for (std::size_t i = 0; i < nodes.size(); ++i)
      errors.add(i, nodes.positions[i].x(), nodes.positions[i].y(), err.err_x[i], err.err_y[i],
                 static_cast<bool>(err.included_x[i]), static_cast<bool>(err.included_y[i]));
    files.emplace("errors.csv", std::move(errors));
    files.emplace("nodes.csv", detail::nodes_table(nodes));
    if (c.dump_bonds)
      files.emplace("bonds.csv", detail::bonds_table(bonds, field));

    const std::string p = variant + ".";
    s.set(p + "max_err_ux", err.max_x);
    s.set(p + "max_err_uy", err.max_y);
    s.set(p + "argmax_ux_x", nodes.positions[err.argmax_x].x());
    s.set(p + "argmax_ux_y", nodes.positions[err.argmax_x].y());
    s.set(p + "argmax_uy_x", nodes.positions[err.argmax_y].x());
    s.set(p + "argmax_uy_y", nodes.positions[err.argmax_y].y());
    s.set(p + "iterations", res.stats.iterations);
    s.set(p + "residual", res.stats.residual);
    s.set(p + "inverted_bonds", res.inverted_bonds.size());
    s.set(p + "wall_s", watch.seconds());
  }
  s.set("wall_s", total.seconds());
  return r;
}

// ---------------------------------------------------------------------------

inline RunResult run_clamped(const ExperimentConfig& c) {
  c.validate();
  detail::Stopwatch total;
  RunResult r;
  auto& s = r.summary;
  detail::echo_config(s, c);
  s.set("strain", c.strain);
  const CalibrationReport cal = detail::calibrate(c);
  detail::report_calibration(s, cal);
  const Micromodulus mm{c.profile, cal.c0, c.horizon};

  const Point lo(-0.5 * c.width, -0.5 * c.height), hi(0.5 * c.width, 0.5 * c.height);
  const Domain domain = Domain::rectangle(lo, hi, c.thickness);
  const double u_edge = c.strain * 0.5 * c.height;
  const double area = c.width * c.thickness;

  for (const auto& variant : c.variants) {
    detail::Stopwatch watch;
    const std::string p = variant + ".";
    auto& files = r.artifacts[variant];
    const bool is_virtual = variant.rfind("virtual_nodes", 0) == 0;

    NodeSet nodes;
    if (is_virtual) {
      nodes = build_grid(domain, cell_centred_grid(lo, hi, c.spacing), c.volumes);
      nodes = add_virtual_layers(std::move(nodes), domain, Side::top, c.layers());
      nodes = add_virtual_layers(std::move(nodes), domain, Side::bottom, c.layers());
    } else {
      nodes = build_grid(domain, boundary_aligned_grid(lo, hi, c.spacing), c.volumes);
    }
    files.emplace("nodes.csv", detail::nodes_table(nodes));

    std::vector<std::size_t> top, bottom;
    if (is_virtual) {
      const int jt = nodes.lattice[nodes.outermost_row(Side::top).front()][1];
      for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes.is_virtual(i))
          (nodes.lattice[i][1] > jt ? top : bottom).push_back(i);
    } else {
      top = nodes.outermost_row(Side::top);
      bottom = nodes.outermost_row(Side::bottom);
    }
    const double u_top = is_virtual ? c.buffer_u() : u_edge;
    BCSet bcs;
    for (std::size_t n : top)
      bcs.fix(n, Vec2(0.0, u_top));
    for (std::size_t n : bottom)
      bcs.fix(n, Vec2(0.0, -u_top));
    if (is_virtual)
      s.set(p + "buffer_displacement_mm", u_top);

    std::vector<double> u, w, residual;
    SolveStats stats;
    std::size_t inverted = 0;
    double virtual_energy = 0.0, sample_energy = 0.0;
    if (variant == "fem") {
      const auto mesh = fem::FEMesh::from_grid(boundary_aligned_grid(lo, hi, c.spacing));
      const fem::PlaneStressLaw law{c.youngs, 1.0 / 3.0, c.thickness};
      const auto k = fem::fem_assemble(mesh, law);
      stats = fem::fem_solve(k, bcs, u, detail::solver_options(c));
      w = fem::fem_energy_density(mesh, law, u);
      residual = residual_forces(k, u, bcs);
      for (double e : fem::element_energies(mesh, law, u))
        sample_energy += e;
    } else {
      const BondTable bonds = build_bonds(nodes, c.horizon);
      CorrectionOptions opts;
      opts.enabled = variant == "corrected" || variant == "virtual_nodes_corrected_sides";
      if (variant == "virtual_nodes_corrected_sides") {
        opts.mask.assign(domain.edge_count(), true);
        opts.mask[domain.side_edge(Side::top)] = false;
        opts.mask[domain.side_edge(Side::bottom)] = false;
      }
      const CorrectionField field = correct_bonds(bonds, nodes, domain, mm, opts);
      const BondOperator k = assemble(nodes, bonds, field);
      const FieldResult res = solve_static(nodes, bonds, field, k, bcs, detail::solver_options(c));
      u = res.u;
      w = res.energy_density;
      stats = res.stats;
      inverted = res.inverted_bonds.size();
      residual = residual_forces(k, u, bcs);
      for (std::size_t i = 0; i < nodes.size(); ++i)
        (nodes.is_virtual(i) ? virtual_energy : sample_energy) += w[i] * nodes.volumes[i];
      if (c.dump_bonds)
        files.emplace("bonds.csv", detail::bonds_table(bonds, field));
      s.set(p + "bonds", bonds.size());
    }

    const std::string source = variant == "fem" ? "fem" : "pd_" + variant;
    auto real = [&](std::size_t i) { return !nodes.is_virtual(i); };
    files.emplace("fields.csv", detail::fields_table(nodes.positions, u, w, source, real));
    if (is_virtual)
      files.emplace("virtual_fields.csv",
                    detail::fields_table(nodes.positions, u, w, source,
                                         [&](std::size_t i) { return nodes.is_virtual(i); }));
    files.emplace("reactions.csv", detail::reactions_table(nodes.positions, residual, top));

    double fy = 0.0;
    for (std::size_t n : top)
      fy += residual[2 * n + 1];
    const std::size_t hot = detail::argmax_energy(w, real);
    s.set(p + "nodes", nodes.size());
    s.set(p + "reaction_N", fy);
    s.set(p + "stress_MPa", fy / area);
    s.set(p + "sample_energy", sample_energy);
    if (is_virtual)
      s.set(p + "virtual_energy", virtual_energy);
    s.set(p + "max_W_x", nodes.positions[hot].x());
    s.set(p + "max_W_y", nodes.positions[hot].y());
    s.set(p + "corner_energy_max", detail::is_corner(nodes, hot));
    s.set(p + "corner_cell_energy_max", detail::is_corner(nodes, hot, 1));
    s.set(p + "iterations", stats.iterations);
    s.set(p + "residual", stats.residual);
    s.set(p + "inverted_bonds", inverted);
    s.set(p + "wall_s", watch.seconds());
  }
  if (c.has_variant("fem"))
    for (const auto& variant : c.variants)
      s.set(variant + ".stress_ratio_fem",
            s.number(variant + ".stress_MPa") / s.number("fem.stress_MPa"));
  s.set("wall_s", total.seconds());
  return r;
}

// ---------------------------------------------------------------------------

inline RunResult run_indent(const ExperimentConfig& c) {
  c.validate();
  detail::Stopwatch total;
  RunResult r;
  auto& s = r.summary;
  detail::echo_config(s, c);
  s.set("radius_mm", c.radius);
  s.set("max_depth_mm", c.max_depth);
  s.set("increments", c.increments);
  const CalibrationReport cal = detail::calibrate(c);
  detail::report_calibration(s, cal);
  const Micromodulus mm{c.profile, cal.c0, c.horizon};

  // Block below y = 0, indenter touching the top surface at x = 0.
  const Point lo(-0.5 * c.width, -c.height), hi(0.5 * c.width, 0.0);
  const Domain domain = Domain::rectangle(lo, hi, c.thickness);
  const GridSpec grid = boundary_aligned_grid(lo, hi, c.spacing);
  const NodeSet nodes = build_grid(domain, grid, c.volumes);
  s.set("nodes", nodes.size());

  BCSet base;
  for (std::size_t n : nodes.outermost_row(Side::bottom))
    base.fix(n);
  const auto candidates = nodes.outermost_row(Side::top);
  IndenterState indenter;
  indenter.initial_center = Point(0.0, c.radius);
  indenter.radius = c.radius;
  const RampSchedule ramp{c.max_depth, c.increments};

  std::map<std::string, IndentationResult> results;
  for (const auto& variant : c.variants) {
    detail::Stopwatch watch;
    const std::string p = variant + ".";
    auto& files = r.artifacts[variant];
    IndentationResult res;
    std::vector<double> w;
    if (variant == "fem") {
      const auto mesh = fem::FEMesh::from_grid(grid);
      const fem::PlaneStressLaw law{c.youngs, 1.0 / 3.0, c.thickness};
      const auto k = fem::fem_assemble(mesh, law);
      res = run_indentation(k, nodes.positions, candidates, base, indenter, ramp,
                            detail::solver_options(c));
      w = fem::fem_energy_density(mesh, law, res.u);
    } else {
      const BondTable bonds = build_bonds(nodes, c.horizon);
      const CorrectionField field =
          correct_bonds(bonds, nodes, domain, mm, {variant == "corrected", {}});
      const BondOperator k = assemble(nodes, bonds, field);
      auto check = [&](std::span<const double> u) { return check_bond_inversion(bonds, u); };
      res = run_indentation(k, nodes.positions, candidates, base, indenter, ramp,
                            detail::solver_options(c), check);
      w = strain_energy_density(nodes, bonds, field, res.u);
      if (c.dump_bonds)
        files.emplace("bonds.csv", detail::bonds_table(bonds, field));
      if (res.aborted) {
        io::CsvTable inv({"bond", "i", "j", "x_i", "y_i", "x_j", "y_j"});
        for (std::size_t b : res.inverted_bonds) {
          const Bond& bond = bonds[b];
          inv.add(b, bond.i, bond.j, nodes.positions[bond.i].x(), nodes.positions[bond.i].y(),
                  nodes.positions[bond.j].x(), nodes.positions[bond.j].y());
        }
        files.emplace("inverted_bonds.csv", std::move(inv));
      }
    }

    io::CsvTable curve({"depth_mm", "force_N"});
    int iterations = 0;
    for (const auto& step : res.curve) {
      curve.add(step.depth, step.force);
      iterations += step.stats.iterations;
    }
    files.emplace("curve.csv", std::move(curve));
    const std::string source = variant == "fem" ? "fem" : "pd_" + variant;
    files.emplace("fields.csv", detail::fields_table(nodes.positions, res.u, w, source,
                                                     [](std::size_t) { return true; }));
    files.emplace("nodes.csv", detail::nodes_table(nodes));

    double half_width = 0.0;
    for (const auto& [n, attach] : res.indenter.stuck)
      half_width = std::max(half_width, std::abs(nodes.positions[n].x()));
    const std::size_t hot = detail::argmax_energy(w, [](std::size_t) { return true; });
    const Point xh = nodes.positions[hot];
    const double reach = half_width + c.horizon;

    s.set(p + "final_depth_mm", res.final_depth());
    s.set(p + "final_force_N", res.final_force());
    s.set(p + "aborted", res.aborted);
    s.set(p + "failure_depth_mm", res.aborted ? res.failure_depth : -1.0);
    s.set(p + "inverted_bonds", res.inverted_bonds.size());
    s.set(p + "contacts", res.indenter.stuck.size());
    s.set(p + "iterations_total", iterations);
    s.set(p + "subindenter_energy_max", std::abs(xh.x()) <= reach && xh.y() >= -reach);
    s.set(p + "wall_s", watch.seconds());
    r.inversion_abort = r.inversion_abort || res.aborted;
    results.emplace(variant, std::move(res));
  }

  // Force relative to the finite-element curve at each variant's last converged depth.
  if (results.count("fem")) {
    const auto& ref = results.at("fem").curve;
    for (const auto& [variant, res] : results) {
      if (res.curve.empty())
        continue;
      const std::size_t step = res.curve.size() - 1;
      if (step >= ref.size() || ref[step].force == 0.0)
        continue;
      s.set(variant + ".force_ratio_fem", res.curve[step].force / ref[step].force);
      s.set(variant + ".compare_depth_mm", res.curve[step].depth);
    }
  }
  s.set("wall_s", total.seconds());
  return r;
}

// ---------------------------------------------------------------------------

inline RunResult run_calibrate(const ExperimentConfig& c) {
  c.validate();
  RunResult r;
  auto& s = r.summary;
  detail::echo_config(s, c);
  io::CsvTable t({"profile", "mode", "c0", "c0_continuum", "residual", "bulk_youngs", "bulk_poisson"});
  for (auto kind : {ProfileKind::constant, ProfileKind::conical})
    for (auto mode : {CalibrationMode::continuum, CalibrationMode::discrete}) {
      const auto cal = calibrate_bulk(detail::elastic(c), kind, c.horizon, mode, c.spacing);
      const std::string p = std::string(to_string(kind)) + "." + to_string(mode) + ".";
      s.set(p + "c0", cal.c0);
      s.set(p + "residual", cal.residual);
      s.set(p + "bulk_youngs_MPa", cal.bulk.uniaxial_modulus());
      s.set(p + "bulk_poisson", cal.bulk.uniaxial_poisson());
      t.add(to_string(kind), to_string(mode), cal.c0, cal.continuum_c0, cal.residual,
            cal.bulk.uniaxial_modulus(), cal.bulk.uniaxial_poisson());
    }
  r.artifacts[""].emplace("calibration.csv", std::move(t));
  return r;
}

inline RunResult run(const ExperimentConfig& c) {
  switch (c.experiment) {
  case Experiment::tension: return run_tension(c);
  case Experiment::clamped: return run_clamped(c);
  case Experiment::indent: return run_indent(c);
  case Experiment::calibrate: return run_calibrate(c);
  }
  throw ConfigError("unknown experiment");
}

} // namespace pdsc::bench
