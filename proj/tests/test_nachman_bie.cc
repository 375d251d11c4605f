#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "nachman/errors.h"
#include "nachman/forward_solver.h"
#include "nachman/lippmann_schwinger.h"
#include "nachman/nachman_bie.h"

using namespace nachman;

namespace {

const Conductivity& bump() {
  static const Conductivity s = Conductivity::bump(0.3, 0.6);
  return s;
}

const DnMatrix& bump_difference(int order) {
  static std::map<int, DnMatrix> cache;
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, dn_difference(bump(), order, mesh_for(bump(), 256))).first;
  return it->second;
}

const Potential& bump_potential() {
  static const Potential q = sample_potential(bump());
  return q;
}

double max_coeff_distance(const BoundaryField& a, const BoundaryField& b) {
  double d = 0.0;
  for (int n = -a.order(); n <= a.order(); ++n) d = std::max(d, std::abs(a[n] - b[n]));
  return d;
}

}  // namespace

TEST(ExpTrace, Coefficients) {
  const BoundaryField e = exp_trace(cplx(1.0, 0.0), 4);
  EXPECT_NEAR(std::abs(e[0] - std::sqrt(kTwoPi)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(e[1] - std::sqrt(kTwoPi) * cplx(0.0, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(e[2] + std::sqrt(kTwoPi) / 2.0), 0.0, 1e-15);
  for (int n = -4; n < 0; ++n) EXPECT_EQ(e[n], cplx(0.0));
  const BoundaryField z = exp_trace(0.0, 3);
  EXPECT_NEAR(std::abs(z[0] - std::sqrt(kTwoPi)), 0.0, 1e-15);
  EXPECT_EQ(z[1], cplx(0.0));
}

TEST(ExpTrace, EvaluatesToExponential) {
  const cplx k(1.5, -0.7);
  const BoundaryField e = exp_trace(k, 24), c = conj_exp_trace(k, 24);
  for (double th : {0.0, 0.9, 2.0, 4.5}) {
    const cplx x = std::polar(1.0, th);
    EXPECT_NEAR(std::abs(e.evaluate(th) - std::exp(cplx(0, 1) * k * x)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(c.evaluate(th) - std::exp(cplx(0, 1) * std::conj(k) * std::conj(x))), 0.0, 1e-12);
  }
  EXPECT_NEAR(exp_trace_tail(2.0, 3), std::sqrt(kTwoPi) * 16.0 / 24.0, 1e-14);
}

TEST(SolveBie, UnitConductivityGivesPlaneWaveAndZeroTransform) {
  const DnMatrix a = DnMatrix::zero(8, DnTag::kDifference);
  const cplx k(2.0, 1.0);
  const CgoTrace g = solve_bie(k, a, SingleLayer(k, 8));
  EXPECT_LT(max_coeff_distance(g.g, exp_trace(k, 8)), 1e-14);
  EXPECT_EQ(scattering_transform_boundary(k, a, g), cplx(0.0));
  EXPECT_NEAR(g.condition, 1.0, 1e-12);
}

TEST(SolveBie, ZeroFrequency) {
  const DnMatrix& a = bump_difference(16);
  const CgoTrace g = solve_bie(0.0, a, SingleLayer(0.0, 16));
  EXPECT_LT(max_coeff_distance(g.g, std::sqrt(kTwoPi) * BoundaryField::basis(16, 0)), 1e-9);
  EXPECT_LT(std::abs(scattering_transform_boundary(0.0, a, g)), 1e-9);
}

TEST(SolveBie, RejectsMismatchedInputs) {
  const DnMatrix full = dn_map_identity(8);
  EXPECT_THROW(solve_bie(1.0, full, SingleLayer(1.0, 8)), ArgumentError);
  const DnMatrix a = DnMatrix::zero(8, DnTag::kDifference);
  EXPECT_THROW(solve_bie(1.0, a, SingleLayer(1.0, 6)), ArgumentError);
  EXPECT_THROW(solve_bie(1.0, a, SingleLayer(2.0, 8)), ArgumentError);
}

TEST(SolveBie, WellConditionedAcrossK) {
  const DnMatrix& a = bump_difference(16);
  for (double r : {0.5, 2.0, 4.0, 6.0})
    for (double th : {0.0, 1.0, 2.5}) {
      const cplx k = std::polar(r, th);
      const CgoTrace g = solve_bie(k, a, SingleLayer(k, 16));
      EXPECT_FALSE(g.near_singular) << k;
      EXPECT_LT(g.condition, 1e3) << k;
      EXPECT_LT(g.residual, 1e-10 * hs_norm(exp_trace(k, 16), SobolevIndex(0.5))) << k;
    }
}

TEST(SolveBie, TruncationWarningForLargeK) {
  const DnMatrix a = DnMatrix::zero(4, DnTag::kDifference);
  EXPECT_TRUE(solve_bie(6.0, a, SingleLayer(6.0, 4)).truncation_warning);
  EXPECT_FALSE(solve_bie(1e-3, a, SingleLayer(1e-3, 4)).truncation_warning);
}

TEST(SolveBie, TraceMatchesLippmannSchwinger) {
  const DnMatrix& a = bump_difference(16);
  for (cplx k : {cplx(1.0, 0.0), cplx(1.0, 1.0)}) {
    const CgoTrace g = solve_bie(k, a, SingleLayer(k, 16));
    const CgoField m = solve_lippmann_schwinger(k, bump_potential());
    EXPECT_LT(max_coeff_distance(g.g, cgo_boundary_trace(bump_potential(), m, 16)), 1e-4) << k;
  }
}

TEST(BoundaryTransform, AgreesWithDirectQuadrature) {
  const DnMatrix& a = bump_difference(16);
  for (cplx k : {cplx(1.0, 0.0), cplx(2.0, 0.0), cplx(1.0, 1.0)}) {
    const cplx tb = boundary_transform_at(k, a);
    const CgoField m = solve_lippmann_schwinger(k, bump_potential());
    const cplx td = scattering_transform_direct(k, bump_potential(), m);
    EXPECT_NEAR(std::abs(tb - td), 0.0, 1e-3 * std::max(1.0, std::abs(td))) << k;
  }
}

TEST(BoundaryTransform, RadialPhantomGivesRadialTransform) {
  const DnMatrix& a = bump_difference(16);
  const cplx t = boundary_transform_at(2.0, a);
  for (double th : {0.7, kPi / 2, 3.0}) EXPECT_NEAR(std::abs(boundary_transform_at(std::polar(2.0, th), a) - t), 0.0, 1e-6);
  EXPECT_NEAR(t.imag(), 0.0, 1e-6);
}

TEST(BoundaryTransform, VanishesAtZero) {
  const DnMatrix& a = bump_difference(16);
  const double small = std::abs(boundary_transform_at(0.01, a));
  EXPECT_LT(small, 1e-3);
  EXPECT_LT(small, std::abs(boundary_transform_at(0.5, a)));
}

TEST(BoundaryTransform, StableUnderHigherTruncation) {
  for (cplx k : {cplx(1.0, 0.0), cplx(3.0, 2.0)})
    EXPECT_NEAR(std::abs(boundary_transform_at(k, bump_difference(16)) - boundary_transform_at(k, bump_difference(24))), 0.0,
                1e-6)
        << k;
}

TEST(LippmannSchwinger, ZeroPotentialGivesOne) {
  const Potential q = sample_potential(Conductivity::unit(), 64, 1.5);
  const CgoField m = solve_lippmann_schwinger(cplx(2.0, -1.0), q);
  for (const cplx& v : m.m)
    if (!std::isnan(v.real())) EXPECT_EQ(v, cplx(1.0));
  EXPECT_EQ(scattering_transform_direct(cplx(2.0, -1.0), q, m), cplx(0.0));
}

TEST(LippmannSchwinger, GroundStateIsSqrtSigma) {
  const CgoField m = solve_lippmann_schwinger(0.0, bump_potential());
  double worst = 0.0;
  for (std::size_t i = 0; i < m.m.size(); ++i) {
    const cplx x = m.grid.point(i);
    if (std::abs(x) <= 1.0) worst = std::max(worst, std::abs(m.m[i] * m.m[i] - bump()(x.real(), x.imag())));
  }
  EXPECT_LT(worst, 1e-4);
}

TEST(LippmannSchwinger, RejectsDiscontinuousPhantom) {
  EXPECT_THROW(sample_potential(Conductivity::two_layer(2.0, 0.5, 0.6)), UnsupportedPhantomError);
}

TEST(ScatteringTransform, InterpolationAndSymmetry) {
  const PolarGrid grid{4.0, 8, 8};
  auto f = [](cplx k) { return cplx(std::norm(k) * std::exp(-std::norm(k) / 4), 0.0); };
  const ScatteringTransform t = sample_transform(grid, 3.5, TransformSource::kDirect, f);
  EXPECT_EQ(t(0.0), cplx(0.0));
  EXPECT_EQ(t(std::polar(3.6, 0.3)), cplx(0.0));
  EXPECT_NEAR(std::abs(t(grid.point(2, 3)) - f(grid.point(2, 3))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(t(std::polar(1.3, 0.3)) - f(std::polar(1.3, 0.3))), 0.0, 2e-2);
  EXPECT_LT(t.symmetry_defect(), 1e-14);
}

TEST(ScatteringTransform, CsvAndJsonRoundTrip) {
  const PolarGrid grid{3.0, 4, 6};
  const ScatteringTransform t =
      sample_transform(grid, 3.0, TransformSource::kBoundary, [](cplx k) { return cplx(k.real() * 0.1, -std::norm(k)); });
  std::stringstream ss;
  write_csv(ss, t);
  const ScatteringTransform back = read_transform_csv(ss, 3.0);
  ASSERT_EQ(back.values.size(), t.values.size());
  EXPECT_EQ(back.grid.radial, 4);
  EXPECT_EQ(back.grid.angular, 6);
  for (std::size_t i = 0; i < t.values.size(); ++i) EXPECT_NEAR(std::abs(back.values[i] - t.values[i]), 0.0, 1e-14);
  const nlohmann::json j = t;
  const ScatteringTransform tj = j.get<ScatteringTransform>();
  EXPECT_EQ(tj.source, TransformSource::kBoundary);
  EXPECT_EQ(tj.values, t.values);
  EXPECT_THROW(transform_source_from_string("fourier"), ArgumentError);
}
