#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nachman/conductivity.h"
#include "nachman/disc_mesh.h"
#include "nachman/errors.h"
#include "nachman/forward_solver.h"

using namespace nachman;

namespace {

const double kTolFem = 1e-3;

BoundaryField random_real_field(int order, std::mt19937& rng) {
  std::normal_distribution<double> d;
  BoundaryField f(order);
  f[0] = d(rng);
  for (int n = 1; n <= order; ++n) {
    f[n] = cplx(d(rng), d(rng)) / double(n * n);
    f[-n] = std::conj(f[n]);
  }
  return f;
}

// Two-layer Dirichlet solution for data phi_1: a r inside rho, (b r + c/r) outside,
// continuity of u and sigma u_r at rho, u(1) = 1.
double two_layer_radial(double r) {
  const double s0 = 2.0, rho = 0.5;
  // b + c = 1, a rho = b rho + c / rho, s0 a = b - c / rho^2
  const double b = (1.0 + s0) / ((1.0 + s0) + (1.0 - s0) * rho * rho);
  const double c = 1.0 - b;
  const double a = b + c / (rho * rho);
  return r < rho ? a * r : b * r + c / r;
}

}  // namespace

TEST(Conductivity, Invariants) {
  const Conductivity s = Conductivity::two_layer(2.0, 0.5, 0.6);
  EXPECT_EQ(s(0.0, 0.0), 2.0);
  EXPECT_EQ(s(0.55, 0.0), 1.0);
  EXPECT_EQ(s.ess_inf(), 1.0);
  EXPECT_EQ(s.ess_sup(), 2.0);
  EXPECT_THROW(Conductivity::two_layer(2.0, 0.7, 0.6), ArgumentError);
  EXPECT_THROW(Conductivity::two_layer(-1.0, 0.3, 0.6), ArgumentError);
  EXPECT_THROW(Conductivity::two_layer(2.0, 0.3, 1.2), ArgumentError);
  EXPECT_THROW(Conductivity(GridSampled{2, {1.0, 2.0, 1.0, 1.0}}, 0.5), ArgumentError);
}

TEST(Conductivity, JsonRoundTrip) {
  for (const Conductivity& c :
       {Conductivity::two_layer(2.0, 0.5, 0.6), Conductivity::bump(0.3, 0.6),
        Conductivity(Inclusion{{0.2, 0.1}, 0.25, 0.5, 0.0}, 0.6)}) {
    const nlohmann::json j = c;
    const Conductivity d = conductivity_from_json(j);
    EXPECT_EQ(d.kind(), c.kind());
    for (double x : {0.0, 0.21, 0.4, 0.58}) EXPECT_EQ(d(x, 0.1), c(x, 0.1));
  }
  EXPECT_THROW(conductivity_from_json({{"kind", "blob"}, {"r1", 0.5}}), ArgumentError);
}

// q = Laplacian(sqrt sigma)/sqrt sigma against a central difference of the profile.
TEST(Conductivity, SchroedingerPotentialOfBump) {
  const Conductivity s = Conductivity::bump(0.3, 0.6);
  const double h = 1e-4;
  for (double r : {0.05, 0.2, 0.4, 0.55}) {
    auto f = [&](double x, double y) { return std::sqrt(s(x, y)); };
    const double lap = (f(r + h, 0) + f(r - h, 0) + f(r, h) + f(r, -h) - 4 * f(r, 0)) / (h * h);
    EXPECT_NEAR(s.schrodinger_potential(r, 0.0), lap / f(r, 0), 1e-4 * (1 + std::abs(lap)));
  }
  EXPECT_EQ(s.schrodinger_potential(0.7, 0.0), 0.0);
  EXPECT_THROW(Conductivity::two_layer(2.0, 0.5, 0.6).schrodinger_potential(0.1, 0.0), UnsupportedPhantomError);
}

TEST(Mesh, BoundaryOnCircleAndAreaNearPi) {
  const FemMesh m = mesh_for(Conductivity::two_layer(2.0, 0.5, 0.6), 128);
  EXPECT_LT(boundary_defect(m), 1e-14);
  EXPECT_NEAR(mesh_area(m), kPi, 1e-6);
  EXPECT_EQ(m.boundary_vertex_count, 128);
}

TEST(Mesh, OffCentreInclusionIsFitted) {
  const Conductivity s(Inclusion{{0.2, 0.1}, 0.25, 0.5, 0.0}, 0.6);
  const FemMesh m = mesh_for(s, 128);
  EXPECT_NEAR(mesh_area(m), kPi, 1e-6);
  EXPECT_LT(boundary_defect(m), 1e-14);
}

TEST(SolveDirichlet, UnitConductivityFirstMode) {
  const FemMesh m = mesh_for(Conductivity::unit(), 128);
  const Eigen::VectorXcd u = solve_dirichlet(Conductivity::unit(), BoundaryField::basis(2, 1), m);
  const double err = l2_error(m, u, [](double x, double y) { return cplx(x, y) / std::sqrt(kTwoPi); });
  EXPECT_LT(err, 1e-6);
}

TEST(SolveDirichlet, ConstantDataGivesConstant) {
  const Conductivity s = Conductivity::two_layer(2.0, 0.5, 0.6);
  const FemMesh m = mesh_for(s, 64);
  const Eigen::VectorXcd u = solve_dirichlet(s, BoundaryField::basis(1, 0), m);
  EXPECT_LT((u.array() - 1.0 / std::sqrt(kTwoPi)).abs().maxCoeff(), 1e-12);
}

TEST(SolveDirichlet, TwoLayerMatchesSeparationOfVariables) {
  const Conductivity s = Conductivity::two_layer(2.0, 0.5, 0.6);
  const FemMesh m = mesh_for(s, 128);
  const Eigen::VectorXcd u = solve_dirichlet(s, BoundaryField::basis(2, 1), m);
  const double err = l2_error(m, u, [](double x, double y) {
    const double r = std::hypot(x, y);
    return r == 0.0 ? cplx(0.0) : two_layer_radial(r) * cplx(x, y) / r / std::sqrt(kTwoPi);
  });
  EXPECT_LT(err, 1e-5);
}

TEST(RadialOracle, KnownValues) {
  // sigma0 = 2 inside rho = 0.5, n = 1: (3 + 0.25) / (3 - 0.25)
  EXPECT_NEAR(radial_dn_eigenvalue(PiecewiseRadial{{0.5}, {2.0}, 0.0}, 1), 13.0 / 11.0, 1e-14);
  EXPECT_NEAR(radial_dn_eigenvalue(PiecewiseRadial{{0.5}, {2.0}, 0.0}, -1), 13.0 / 11.0, 1e-14);
  EXPECT_EQ(radial_dn_eigenvalue(PiecewiseRadial{{0.5}, {2.0}, 0.0}, 0), 0.0);
  for (int n : {1, 3, 7}) EXPECT_NEAR(radial_dn_eigenvalue(PiecewiseRadial{{}, {}, 0.0}, n), n, 1e-13);
  // a layer of value 1 is invisible
  EXPECT_NEAR(radial_dn_eigenvalue(PiecewiseRadial{{0.3, 0.6}, {1.0, 1.0}, 0.0}, 4), 4.0, 1e-13);
  EXPECT_THROW(radial_dn_eigenvalue(PiecewiseRadial{{0.5}, {2.0}, 0.1}, 1), ArgumentError);
}

// Independent oracle: direct 2x2 solve of the matching conditions for the
// single-interface case at several n.
TEST(RadialOracle, MatchesTwoByTwoSolve) {
  const double s0 = 0.4, rho = 0.35;
  for (int n = 1; n <= 6; ++n) {
    // u = a r^n inside; u = c r^n + d r^-n outside, u(1) = c + d = 1
    Eigen::Matrix3d m;
    Eigen::Vector3d b(0, 0, 1);
    const double p = std::pow(rho, n);
    m << p, -p, -1 / p,  //
        s0 * p, -p, 1 / p,  //
        0, 1, 1;
    const Eigen::Vector3d x = m.fullPivLu().solve(b);
    EXPECT_NEAR(radial_dn_eigenvalue(PiecewiseRadial{{rho}, {s0}, 0.0}, n), n * (x(1) - x(2)), 1e-12);
  }
}

TEST(AssembleDnMap, UnitConductivityIsDiagonalAbs) {
  const DnMatrix l = assemble_dn_map(Conductivity::unit(), 8, mesh_for(Conductivity::unit(), 256));
  const DnMatrix id = dn_map_identity(8);
  for (int m = -8; m <= 8; ++m)
    for (int n = -8; n <= 8; ++n) EXPECT_NEAR(std::abs(l(m, n) - id(m, n)), 0.0, kTolFem * std::max(1, std::abs(n)));
  EXPECT_LT(l.hermitian_defect(), 1e-12);
  EXPECT_EQ(l.tag, DnTag::kFullMap);
}

TEST(AssembleDnMap, TwoLayerEigenvaluesAndOffDiagonal) {
  const Conductivity s = Conductivity::two_layer(2.0, 0.5, 0.6);
  const DnMatrix l = assemble_dn_map(s, 12, mesh_for(s, 256));
  double off = 0.0;
  for (int m = -12; m <= 12; ++m)
    for (int n = -12; n <= 12; ++n)
      if (m != n) off = std::max(off, std::abs(l(m, n)));
  for (int n = -8; n <= 8; ++n) {
    const double ex = radial_dn_eigenvalue(PiecewiseRadial{{0.5}, {2.0}, 0.0}, n);
    EXPECT_NEAR(l(n, n).real(), ex, kTolFem * std::max(1.0, ex));
  }
  EXPECT_LT(off, 1e-4);
  // annihilates constants
  EXPECT_LT(hs_norm(l.apply(BoundaryField::basis(12, 0)), SobolevIndex(0.0)), kTolFem);
}

TEST(AssembleDnMap, RefusesUnresolvedModes) {
  const FemMesh m = mesh_for(Conductivity::unit(), 64);
  EXPECT_NO_THROW(assemble_dn_map(Conductivity::unit(), 8, m));
  EXPECT_THROW(assemble_dn_map(Conductivity::unit(), 9, m), ResolutionError);
}

TEST(DnDifference, UnitIsZeroAndTagged) {
  const DnMatrix a = dn_difference(Conductivity::unit(), 6, mesh_for(Conductivity::unit(), 128));
  EXPECT_EQ(a.tag, DnTag::kDifference);
  EXPECT_LT(a.entries.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DnDifference, TwoLayerMatchesOracleAndDecays) {
  const Conductivity s = Conductivity::two_layer(2.0, 0.5, 0.6);
  const DnMatrix a = dn_difference(s, 16, mesh_for(s, 256));
  for (int n = 1; n <= 8; ++n) {
    const double ex = radial_dn_eigenvalue(PiecewiseRadial{{0.5}, {2.0}, 0.0}, n) - n;
    EXPECT_NEAR(a(n, n).real(), ex, 1e-3 * ex) << n;
  }
  // |A(4,4)| / |A(1,1)| <= C r1^6
  EXPECT_LT(std::abs(a(4, 4)) / std::abs(a(1, 1)), 2.0 * std::pow(0.6, 6));
}

TEST(DnDifference, FemToleranceEstimate) {
  const FemToleranceEstimate e = estimate_fem_tolerance(Conductivity::two_layer(2.0, 0.5, 0.6), 8, 128);
  EXPECT_LT(e.coarse, kTolFem);
  EXPECT_LT(e.fine, e.coarse);
  EXPECT_EQ(e.check_order, 8);
}

TEST(Alessandrini, UnitCosine) {
  BoundaryField c(2);
  c[1] = c[-1] = 1.0 / std::sqrt(2.0);
  const cplx v = alessandrini_pairing(c, c, Conductivity::unit(), mesh_for(Conductivity::unit(), 128));
  EXPECT_NEAR(v.real(), 1.0, 1e-6);
  EXPECT_NEAR(v.imag(), 0.0, 1e-12);
}

TEST(Alessandrini, ConstantDataHasNoEnergy) {
  std::mt19937 rng(11);
  const Conductivity s = Conductivity::two_layer(2.0, 0.5, 0.6);
  const FemMesh m = mesh_for(s, 128);
  EXPECT_NEAR(std::abs(alessandrini_pairing(random_real_field(4, rng), BoundaryField::basis(4, 0), s, m)), 0.0, 1e-10);
}

TEST(Alessandrini, MatchesMatrixAndDifferenceIdentity) {
  std::mt19937 rng(12);
  const Conductivity s = Conductivity::two_layer(2.0, 0.5, 0.6);
  const FemMesh m = mesh_for(s, 128);
  const DnMatrix l = assemble_dn_map(s, 6, m);
  const DnMatrix a = dn_difference(s, 6, m);
  const DirichletSolver solver(m, s);
  for (int trial = 0; trial < 3; ++trial) {
    const BoundaryField f = random_real_field(6, rng), g = random_real_field(6, rng);
    const cplx direct = alessandrini_pairing(g, f, s, m);
    const cplx matrix = bilinear_pairing(g, l.apply(f));
    EXPECT_NEAR(std::abs(direct - matrix), 0.0, 1e-6 * std::abs(matrix));
    // <g, (Lambda_sigma - Lambda_1) f> = int (sigma - 1) grad v . grad u, v harmonic in g
    const Eigen::VectorXcd u = solver.solve(f);
    const Eigen::VectorXcd v = harmonic_extension_nodal(m, g);
    const Eigen::SparseMatrix<double> k1 = assemble_stiffness(m, Conductivity::unit());
    const cplx lemma = solver.energy(v, u) - cplx((v.transpose() * (k1 * u))(0));
    EXPECT_NEAR(std::abs(lemma - bilinear_pairing(g, a.apply(f))), 0.0, kTolFem * std::abs(lemma) + 1e-9);
  }
}

// ||grad u||_{L2(|x|<r1)} / hs_norm(f, -m) stays bounded for high-frequency data.
TEST(InteriorEstimate, GradientBoundedByNegativeNorm) {
  std::mt19937 rng(13);
  const Conductivity s = Conductivity::two_layer(2.0, 0.5, 0.6);
  const FemMesh m = mesh_for(s, 256);
  const DirichletSolver solver(m, s);
  double worst = 0.0;
  for (int trial = 0; trial < 6; ++trial) {
    BoundaryField f = random_real_field(16, rng);
    f = f - project(f, 4 + 2 * trial);
    const double g = gradient_norm_in_disc(m, solver.solve(f), 0.6);
    worst = std::max(worst, g / hs_norm(f, SobolevIndex(-1.0)));
  }
  EXPECT_LT(worst, 5.0);
}
