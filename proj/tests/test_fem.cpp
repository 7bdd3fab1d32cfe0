#include <pdsc/analytic.hpp>
#include <pdsc/fem.hpp>

#include <gtest/gtest.h>

#include <Eigen/Dense>

using namespace pdsc;
using namespace pdsc::fem;

namespace {

const PlaneStressLaw law{1000.0, 1.0 / 3.0, 1.0};

FEMesh mesh_of(int nx, int ny, double h = 1.0) {
  return FEMesh::from_grid(GridSpec{h, {0.0, 0.0}, nx, ny});
}

std::vector<double> affine(const FEMesh& m, const Eigen::Matrix2d& g, const Vec2& t = Vec2::Zero()) {
  std::vector<double> u(2 * m.num_nodes());
  for (std::size_t i = 0; i < m.num_nodes(); ++i) {
    const Vec2 v = g * m.positions[i] + t;
    u[2 * i] = v.x();
    u[2 * i + 1] = v.y();
  }
  return u;
}

std::vector<double> mul(const SparseOperator& k, const std::vector<double>& u) {
  std::vector<double> y(u.size());
  k.apply(u, y);
  return y;
}

bool on_boundary(const FEMesh& m, std::size_t n) {
  const int i = static_cast<int>(n) % m.nx, j = static_cast<int>(n) / m.nx;
  return i == 0 || j == 0 || i == m.nx - 1 || j == m.ny - 1;
}

} // namespace

TEST(Mesh, NodeAndElementCounts) {
  const FEMesh m = mesh_of(4, 3);
  EXPECT_EQ(m.num_nodes(), 12u);
  EXPECT_EQ(m.elements.size(), 6u);
  EXPECT_EQ(m.side_nodes(Side::top).size(), 4u);
  EXPECT_EQ(m.side_nodes(Side::left).size(), 3u);
  EXPECT_THROW(mesh_of(1, 3), ConfigError);
}

TEST(Law, MatrixIsSymmetricPositiveDefinite) {
  const Eigen::Matrix3d d = law.matrix();
  EXPECT_NEAR((d - d.transpose()).norm(), 0.0, 0.0);
  EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(d).eigenvalues().minCoeff(), 0.0);
}

TEST(Element, UniaxialStretchGivesConstantStress) {
  const FEMesh m = mesh_of(2, 2, 0.7);
  Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
  g(0, 0) = 2e-3;
  const auto u = affine(m, g);
  const Eigen::Vector3d expected = law.matrix() * Eigen::Vector3d(2e-3, 0.0, 0.0);
  for (const auto& s : element_stresses(m, law, 0, u))
    EXPECT_LT((s - expected).norm(), 1e-10 * expected.norm());
}

TEST(Element, RigidTranslationHasNoForce) {
  const FEMesh m = mesh_of(3, 3);
  const auto k = fem_assemble(m, law);
  for (double f : mul(k, affine(m, Eigen::Matrix2d::Zero(), Vec2(0.4, -1.1))))
    EXPECT_NEAR(f, 0.0, 1e-10);
}

TEST(Element, StiffnessSymmetricWithThreeZeroModes) {
  const ElementMatrix ke = element_stiffness(1.3, law);
  EXPECT_NEAR((ke - ke.transpose()).norm(), 0.0, 1e-10);
  const auto ev = Eigen::SelfAdjointEigenSolver<ElementMatrix>(ke).eigenvalues();
  for (int i = 0; i < 3; ++i)
    EXPECT_NEAR(ev(i), 0.0, 1e-9 * ev(7));
  EXPECT_GT(ev(3), 1e-6 * ev(7));
}

TEST(Patch, LinearFieldOnATwoByTwoPatch) {
  const FEMesh m = mesh_of(3, 3);
  const auto k = fem_assemble(m, law);
  Eigen::Matrix2d g;
  g << 1e-3, 4e-4, -2e-4, 5e-4;
  const auto exact = affine(m, g, Vec2(0.1, 0.2));
  BCSet bcs;
  for (std::size_t n = 0; n < m.num_nodes(); ++n)
    if (on_boundary(m, n))
      bcs.fix(n, Vec2(exact[2 * n], exact[2 * n + 1]));
  std::vector<double> u;
  fem_solve(k, bcs, u);
  EXPECT_NEAR(u[2 * 4], exact[2 * 4], 1e-12);
  EXPECT_NEAR(u[2 * 4 + 1], exact[2 * 4 + 1], 1e-12);
  const Eigen::Matrix2d eps = 0.5 * (g + g.transpose());
  const Eigen::Vector3d expected = law.matrix() * Eigen::Vector3d(eps(0, 0), eps(1, 1), 2 * eps(0, 1));
  for (std::size_t e = 0; e < m.elements.size(); ++e)
    for (const auto& s : element_stresses(m, law, e, u))
      EXPECT_LT((s - expected).norm(), 1e-10 * expected.norm());
}

TEST(Energy, TotalMatchesQuadraticForm) {
  const FEMesh m = mesh_of(6, 5);
  const auto k = fem_assemble(m, law);
  std::vector<double> u(2 * m.num_nodes());
  for (std::size_t i = 0; i < u.size(); ++i)
    u[i] = std::sin(0.37 * double(i)) * 1e-3;
  double total = 0.0;
  for (double e : element_energies(m, law, u))
    total += e;
  const auto ku = mul(k, u);
  double quad = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    quad += 0.5 * u[i] * ku[i];
  EXPECT_NEAR(total, quad, 1e-10 * quad);
  for (double w : fem_energy_density(m, law, u))
    EXPECT_GE(w, 0.0);
}

TEST(Energy, AffineFieldEnergyAtEveryNode) {
  const FEMesh m = mesh_of(5, 4, 0.5);
  Eigen::Matrix2d g;
  g << 2e-3, 1e-3, 0.0, -1e-3;
  const Eigen::Matrix2d eps = 0.5 * (g + g.transpose());
  const double expected = HookeTensor::plane_stress(law.youngs, law.poisson).energy_density(eps);
  for (double w : fem_energy_density(m, law, affine(m, g)))
    EXPECT_NEAR(w, expected, 1e-10 * expected);
  for (double w : fem_energy_density(m, law, std::vector<double>(2 * m.num_nodes(), 0.0)))
    EXPECT_EQ(w, 0.0);
}

TEST(Solve, UniformTractionReproducesUniaxialStress) {
  // 10 x 20 sheet, 1 MPa on top and bottom; consistent Q4 edge loads.
  const double h = 1.0, sigma = 1.0;
  const FEMesh m = FEMesh::from_grid(GridSpec{h, {-5.0, -10.0}, 11, 21});
  const auto k = fem_assemble(m, law);
  BCSet bcs;
  for (Side side : {Side::top, Side::bottom}) {
    const auto row = m.side_nodes(side);
    for (std::size_t a = 0; a < row.size(); ++a) {
      const double w = (a == 0 || a + 1 == row.size()) ? 0.5 : 1.0;
      bcs.load(row[a], Vec2(0.0, (side == Side::top ? 1.0 : -1.0) * sigma * h * law.thickness * w));
    }
  }
  const std::size_t centre = m.node(5, 10);
  bcs.fix(centre);
  bcs.prescribe(m.node(5, 11), axis_x, Vec2::Zero());
  std::vector<double> u;
  fem_solve(k, bcs, u);
  const auto ref = analytic::uniaxial_solution(law.youngs, law.poisson, sigma, m.positions[centre])
                       .sample(m.positions);
  for (std::size_t i = 0; i < u.size(); ++i)
    EXPECT_NEAR(u[i], ref[i], 1e-8 * 0.01);
}

namespace {

double clamped_stress(double h) {
  const double edge = 24.0;
  const auto n = static_cast<int>(std::lround(edge / h)) + 1;
  const FEMesh m = FEMesh::from_grid(GridSpec{h, {-12.0, -12.0}, n, n});
  const auto k = fem_assemble(m, law);
  BCSet bcs;
  const auto top = m.side_nodes(Side::top);
  for (auto id : top)
    bcs.fix(id, Vec2(0.0, 0.12));
  for (auto id : m.side_nodes(Side::bottom))
    bcs.fix(id, Vec2(0.0, -0.12));
  std::vector<double> u;
  fem_solve(k, bcs, u);
  return reaction_force(k, u, bcs, top).y() / edge;
}

} // namespace

TEST(Convergence, HalvingTheSpacingChangesClampedStressByUnderOnePercent) {
  const double coarse = clamped_stress(1.0), fine = clamped_stress(0.5);
  EXPECT_NEAR(coarse, 10.32, 0.01 * 10.32);
  EXPECT_LT(std::abs(fine - coarse) / coarse, 0.01);
}
