// Acceptance checks for the benchmark results. Run one criterion with
// `acceptance --criterion N`; each prints its measurements and a single
// PASS/FAIL line, and exits non-zero on FAIL.

#include <pdsc/analytic.hpp>
#include <pdsc/experiments.hpp>

#include <CLI11.hpp>

#include <Eigen/Dense>

#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace pdsc;
using namespace pdsc::bench;

namespace {

class Report {
public:
  explicit Report(int criterion) : criterion_(criterion) {}

  void check(bool ok, const char* fmt, auto... args) {
    char buf[512];
    if constexpr (sizeof...(args) == 0)
      std::snprintf(buf, sizeof buf, "%s", fmt);
    else
      std::snprintf(buf, sizeof buf, fmt, args...);
    std::printf("  [%s] %s\n", ok ? "ok" : "FAIL", buf);
    passed_ = passed_ && ok;
  }

  int finish(const char* title) const {
    std::printf("criterion %d: %s: %s\n", criterion_, passed_ ? "PASS" : "FAIL", title);
    return passed_ ? 0 : 1;
  }

private:
  int criterion_;
  bool passed_ = true;
};

int tension() {
  Report rep(1);
  const auto r = run_tension(default_config(Experiment::tension));
  const auto& s = r.summary;
  const double cx = s.number("corrected.max_err_ux"), cy = s.number("corrected.max_err_uy");
  const double ux = s.number("uncorrected.max_err_ux"), uy = s.number("uncorrected.max_err_uy");
  rep.check(cx <= 0.05, "corrected max u_x error %.2f%% <= 5%%", 100 * cx);
  rep.check(cy <= 0.05, "corrected max u_y error %.2f%% <= 5%%", 100 * cy);
  rep.check(ux >= 0.50, "uncorrected max u_x error %.1f%% >= 50%%", 100 * ux);
  rep.check(uy >= 2.00, "uncorrected max u_y error %.1f%% >= 200%%", 100 * uy);
  rep.check(s.number("wall_s") < 30.0, "wall clock %.1f s < 30 s (%s nodes)", s.number("wall_s"),
            s.get("nodes").c_str());
  return rep.finish("tension sheet displacement errors");
}

int clamped() {
  Report rep(2);
  const auto r = run_clamped(default_config(Experiment::clamped));
  const auto& s = r.summary;
  const double fem = s.number("fem.stress_MPa");
  const double cor = s.number("corrected.stress_MPa");
  const double unc = s.number("uncorrected.stress_MPa");
  const double vn = s.number("virtual_nodes.stress_MPa");
  const double vc = s.number("virtual_nodes_corrected_sides.stress_MPa");
  std::printf("  stresses (MPa): fem %.4f, corrected %.4f, virtual+sides %.4f, virtual %.4f, "
              "uncorrected %.4f\n",
              fem, cor, vc, vn, unc);
  rep.check(std::abs(cor / fem - 1) <= 0.02, "corrected / fem = %.4f within 2%%", cor / fem);
  rep.check(unc / fem >= 0.38 && unc / fem <= 0.45, "uncorrected / fem = %.4f in [0.38, 0.45]",
            unc / fem);
  rep.check(vn / fem >= 0.78 && vn / fem <= 0.88, "virtual / fem = %.4f in [0.78, 0.88]", vn / fem);
  rep.check(vc / fem >= 0.78 && vc / fem <= 0.88, "virtual+sides / fem = %.4f in [0.78, 0.88]",
            vc / fem);
  rep.check(cor > vc && vc >= vn && vn > unc, "ordering corrected > virtual+sides >= virtual > uncorrected");
  rep.check(s.get("corrected.corner_energy_max") == "true" && s.get("fem.corner_energy_max") == "true",
            "corner node carries the maximum energy density (fem %s, corrected %s)",
            s.get("fem.corner_energy_max").c_str(), s.get("corrected.corner_energy_max").c_str());
  std::printf("  [info] corrected maximum at (%g, %g), within one spacing of a corner: %s\n",
              s.number("corrected.max_W_x"), s.number("corrected.max_W_y"),
              s.get("corrected.corner_cell_energy_max").c_str());
  return rep.finish("clamped sheet mean tensile stress");
}

int indent() {
  Report rep(3);
  const auto r = run_indent(default_config(Experiment::indent));
  const auto& s = r.summary;
  const bool aborted = s.get("uncorrected.aborted") == "true";
  const double fail = s.number("uncorrected.failure_depth_mm");
  const double ratio_unc = s.number("uncorrected.force_ratio_fem");
  const double ratio_cor = s.number("corrected.force_ratio_fem");
  rep.check(aborted && std::abs(fail - 0.4) <= 0.1 + 1e-9,
            "uncorrected stops on bond inversion at %.2f mm (0.4 +- 0.1 mm)", fail);
  rep.check(ratio_unc >= 0.60 && ratio_unc <= 0.80,
            "uncorrected force %.1f%% below fem at %.2f mm (20-40%%)", 100 * (1 - ratio_unc),
            s.number("uncorrected.compare_depth_mm"));
  rep.check(s.number("corrected.final_depth_mm") >= s.number("max_depth_mm") - 1e-9 &&
                std::abs(ratio_cor - 1) <= 0.10,
            "corrected force at %.2f mm: %.1f N vs fem %.1f N (%.2f%%, within 10%%)",
            s.number("corrected.final_depth_mm"), s.number("corrected.final_force_N"),
            s.number("fem.final_force_N"), 100 * (ratio_cor - 1));
  rep.check(s.get("corrected.subindenter_energy_max") == "true",
            "corrected energy maximum lies under the indenter");
  std::printf("  wall clock: fem %.0f s, uncorrected %.0f s, corrected %.0f s\n",
              s.number("fem.wall_s"), s.number("uncorrected.wall_s"), s.number("corrected.wall_s"));
  return rep.finish("cylindrical indentation");
}

/// Half-plane strip below y = 0 with m = 1/6. Only nodes whose horizon stays
/// clear of the artificial side and bottom edges are evaluated.
int affine_patch() {
  Report rep(4);
  const double horizon = 6.0, spacing = 1.0;
  const Point lo(-30, -30), hi(30, 0);
  const Domain domain = Domain::rectangle(lo, hi);
  const NodeSet nodes = build_grid(domain, boundary_aligned_grid(lo, hi, spacing));
  const BondTable bonds = build_bonds(nodes, horizon);
  const auto cal = calibrate_bulk(ElasticParams::bond_based(1000.0, 2), ProfileKind::constant, horizon,
                                  CalibrationMode::discrete, spacing);
  SurfaceMask mask(domain.edge_count(), false);
  mask[domain.side_edge(Side::top)] = true;
  const auto field = correct_bonds(bonds, nodes, domain, {ProfileKind::constant, cal.c0, horizon},
                                   {true, mask});

  // Bulk nodes: every bond at its uncorrected strength and every neighbor
  // carrying a full cell volume.
  const double full = spacing * spacing;
  std::vector<bool> bulk_node(nodes.size(), true);
  for (std::size_t b = 0; b < bonds.size(); ++b) {
    const auto [i, j] = std::pair(bonds[b].i, bonds[b].j);
    if (field[b].coeff != field[b].bulk)
      bulk_node[i] = bulk_node[j] = false;
    if (nodes.volumes[j] != full)
      bulk_node[i] = false;
    if (nodes.volumes[i] != full)
      bulk_node[j] = false;
  }

  std::vector<std::size_t> probe;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Point& x = nodes.positions[i];
    if (std::abs(x.x()) < 30 - horizon && x.y() > -30 + horizon) // full horizon away from unmasked edges
      probe.push_back(i);
  }

  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> d(-1e-3, 1e-3);
  double worst_surface = 0.0, worst_bulk = 0.0;
  double worst_depth = 0.0, worst_below_surface = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double exy = d(rng);
    const Strain eps = (Strain() << d(rng), exy, exy, d(rng)).finished();
    const auto u = analytic::AffineField{eps, Point::Zero()}.sample(nodes.positions);
    const auto w = strain_energy_density(nodes, bonds, field, u);
    const double bulk = cal.bulk.energy_density(eps);
    for (std::size_t i : probe) {
      const double depth = -nodes.positions[i].y();
      const double err = std::abs(w[i] / bulk - 1.0);
      if (bulk_node[i]) {
        worst_bulk = std::max(worst_bulk, err);
      } else {
        if (err > worst_surface) {
          worst_surface = err;
          worst_depth = depth;
        }
        if (depth > 0.0)
          worst_below_surface = std::max(worst_below_surface, err);
      }
    }
  }
  rep.check(worst_bulk <= 1e-10, "bulk nodes: max relative deviation %.2e <= 1e-10", worst_bulk);
  rep.check(worst_surface <= 0.03,
            "nodes with corrected bonds: max relative deviation %.2f%% <= 3%% "
            "(worst at depth %.0f)",
            100 * worst_surface, worst_depth);
  std::printf("  [info] excluding the surface row: max relative deviation %.2f%%\n",
              100 * worst_below_surface);
  return rep.finish("affine patch energy equivalence");
}

int correction_factor_suite() {
  Report rep(5);
  const double horizon = 2.7;
  const double one_c = correction_factor_from_length(horizon, horizon, ProfileKind::constant, 2);
  const double one_k = correction_factor_from_length(horizon, horizon, ProfileKind::conical, 2);
  rep.check(one_c == 1.0 && one_k == 1.0, "phi(d = delta) = %.17g (constant), %.17g (conical)", one_c,
            one_k);
  const double eight = correction_factor_from_length(horizon / 2, horizon, ProfileKind::constant, 2);
  rep.check(std::abs(eight - 8.0) <= 1e-12, "phi(delta/2) constant = %.15f", eight);
  const double conical = correction_factor_from_length(horizon / 2, horizon, ProfileKind::conical, 2);
  rep.check(std::abs(conical - 3.2) <= 1e-12, "phi(delta/2) conical = %.15f", conical);
  double worst = 0.0;
  for (auto kind : {ProfileKind::constant, ProfileKind::conical})
    for (double ratio : {0.1, 0.25, 0.5, 0.9})
      for (double lambda : {1e-3, 0.5, 3.0, 1e3}) {
        const double a = correction_factor_from_length(ratio, 1.0, kind, 2);
        const double b = correction_factor_from_length(lambda * ratio, lambda, kind, 2);
        worst = std::max(worst, std::abs(a - b) / a);
      }
  rep.check(worst <= 1e-12, "scale invariance: max relative change %.2e", worst);
  return rep.finish("correction factor values");
}

int operator_invariants() {
  Report rep(6);
  const double horizon = 3.0;
  const Point lo(0, 0), hi(30, 30);
  const Domain domain = Domain::rectangle(lo, hi);
  const NodeSet nodes = build_grid(domain, boundary_aligned_grid(lo, hi, 1.0));
  const BondTable bonds = build_bonds(nodes, horizon);
  const auto cal = calibrate_bulk(ElasticParams::bond_based(1000.0, 2), ProfileKind::constant, horizon,
                                  CalibrationMode::discrete, 1.0);
  const Micromodulus mm{ProfileKind::constant, cal.c0, horizon};
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> d(-1.0, 1.0);

  for (bool corrected : {false, true}) {
    const auto field = correct_bonds(bonds, nodes, domain, mm, {corrected, {}});
    const BondOperator k = assemble(nodes, bonds, field);
    const char* tag = corrected ? "corrected" : "uncorrected";
    const Eigen::SparseMatrix<double> km = k.to_sparse();
    const double asym = (Eigen::SparseMatrix<double>(km.transpose()) - km).norm();
    rep.check(asym == 0.0, "%s: |K - K^T| = %.1e", tag, asym);

    std::vector<double> t(k.size()), f(k.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      t[2 * i] = 0.37;
      t[2 * i + 1] = -1.3;
    }
    k.apply(t, f);
    double fmax = 0.0;
    for (double x : f)
      fmax = std::max(fmax, std::abs(x));
    rep.check(fmax <= 1e-9, "%s: max |K u_translation| = %.1e", tag, fmax);

    std::vector<double> u(k.size()), ku(k.size());
    for (auto& x : u)
      x = d(rng);
    k.apply(u, ku);
    double quad = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
      quad += 0.5 * u[i] * ku[i];
    const auto w = strain_energy_density(nodes, bonds, field, u);
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
      sum += w[i] * nodes.volumes[i];
    rep.check(std::abs(sum - quad) <= 1e-10 * quad, "%s: 1/2 u^T K u vs sum W V relative %.1e", tag,
              std::abs(sum - quad) / quad);

    BCSet bcs;
    for (std::size_t n : nodes.outermost_row(Side::bottom))
      bcs.fix(n);
    for (std::size_t n : nodes.outermost_row(Side::top))
      bcs.fix(n, Vec2(0.02, 0.3));
    bcs.load(nodes.size() / 2, Vec2(5.0, -3.0));
    std::vector<double> it;
    solve_constrained(k, bcs, it);
    const auto dense = analytic::dense_oracle_solve(k, bcs);
    double err = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < it.size(); ++i) {
      err = std::max(err, std::abs(it[i] - dense[i]));
      norm = std::max(norm, std::abs(dense[i]));
    }
    rep.check(err <= 1e-8 * norm, "%s: iterative vs dense on %zu DOFs, relative %.1e", tag, k.size(),
              err / norm);
  }
  return rep.finish("stiffness operator invariants");
}

int fem_patch() {
  Report rep(7);
  const fem::PlaneStressLaw law{1000.0, 1.0 / 3.0, 1.0};
  const auto mesh = fem::FEMesh::from_grid(GridSpec{0.5, {-1.0, -1.5}, 7, 9});
  const auto k = fem::fem_assemble(mesh, law);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> d(-1e-3, 1e-3);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::Matrix2d g;
    g << d(rng), d(rng), d(rng), d(rng);
    const Vec2 shift(d(rng), d(rng));
    BCSet bcs;
    std::vector<double> exact(2 * mesh.num_nodes());
    for (std::size_t n = 0; n < mesh.num_nodes(); ++n) {
      const Vec2 v = g * mesh.positions[n] + shift;
      exact[2 * n] = v.x();
      exact[2 * n + 1] = v.y();
      const int i = static_cast<int>(n) % mesh.nx, j = static_cast<int>(n) / mesh.nx;
      if (i == 0 || j == 0 || i == mesh.nx - 1 || j == mesh.ny - 1)
        bcs.fix(n, v);
    }
    std::vector<double> u;
    fem::fem_solve(k, bcs, u);
    double err = 0.0, scale = 0.0;
    for (std::size_t q = 0; q < u.size(); ++q) {
      err = std::max(err, std::abs(u[q] - exact[q]));
      scale = std::max(scale, std::abs(exact[q]));
    }
    worst = std::max(worst, err / scale);
  }
  rep.check(worst <= 1e-10, "affine fields reproduced, max relative deviation %.1e", worst);

  auto c = default_config(Experiment::clamped);
  c.variants = {"fem"};
  const double stress = run_clamped(c).summary.number("fem.stress_MPa");
  rep.check(std::abs(stress / 10.32 - 1) <= 0.03, "clamped sheet stress %.4f MPa (10.32 +- 3%%)",
            stress);
  return rep.finish("finite-element patch test and clamped reference");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int criterion = 0;
  app.add_option("--criterion", criterion, "criterion number (1-7)")
      ->required()
      ->check(CLI::Range(1, 7));
  CLI11_PARSE(app, argc, argv);

  const std::function<int()> checks[] = {tension,         clamped,           indent,   affine_patch,
                                         correction_factor_suite, operator_invariants, fem_patch};
  try {
    return checks[criterion - 1]();
  } catch (const std::exception& e) {
    std::printf("criterion %d: FAIL: %s\n", criterion, e.what());
    return 1;
  }
}
