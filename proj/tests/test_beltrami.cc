#include <gtest/gtest.h>

#include <cmath>

#include "nachman/beltrami.h"
#include "nachman/errors.h"
#include "nachman/experiments.h"
#include "nachman/forward_solver.h"
#include "nachman/nachman_bie.h"

using namespace nachman;

namespace {

const BeltramiCoefficient& two_layer_mu() {
  static const BeltramiCoefficient mu = beltrami_coefficient(Conductivity::two_layer(2.0, 0.5, 0.6));
  return mu;
}

double max_deviation_from_one(const BeltramiCgo& f) {
  double d = 0.0;
  for (std::size_t i = 0; i < f.m.size(); ++i)
    if (std::abs(f.grid.point(i)) <= f.valid_radius) d = std::max(d, std::abs(f.m[i] - 1.0));
  return d;
}

}  // namespace

TEST(BeltramiCoefficient, ValuesAndSupport) {
  const BeltramiCoefficient& mu = two_layer_mu();
  EXPECT_NEAR(mu.kappa, 1.0 / 3.0, 1e-14);
  EXPECT_LE(mu.support_radius, 0.6 + 1e-12);
  for (std::size_t i = 0; i < mu.mu.size(); ++i) {
    const double r = std::abs(mu.grid.point(i));
    if (r > 0.51) EXPECT_EQ(mu.mu[i], 0.0);
    if (r < 0.49) EXPECT_NEAR(mu.mu[i], -1.0 / 3.0, 1e-15);
  }
  const BeltramiCoefficient neg = negated(mu);
  for (std::size_t i = 0; i < mu.mu.size(); i += 97) EXPECT_EQ(neg.mu[i], -mu.mu[i]);
}

TEST(BeltramiCgo, UnitConductivityGivesOne) {
  const BeltramiCoefficient mu = beltrami_coefficient(Conductivity::unit(), 64, 2.1);
  const BeltramiCgo f = solve_beltrami_cgo(mu, cplx(1.5, 0.5));
  EXPECT_EQ(max_deviation_from_one(f), 0.0);
  EXPECT_EQ(ap_transform(mu, 2.0).tau, cplx(0.0));
}

TEST(BeltramiCgo, ZeroFrequencyGivesOne) {
  const BeltramiCgo f = solve_beltrami_cgo(two_layer_mu(), 0.0);
  EXPECT_LT(max_deviation_from_one(f), 1e-12);
}

TEST(BeltramiCgo, SolvesEquation) {
  const BeltramiCgo f = solve_beltrami_cgo(two_layer_mu(), cplx(1.0, 1.0));
  EXPECT_LT(f.residual, 1e-7);
  EXPECT_GT(f.valid_radius, 1.0);
}

TEST(BeltramiCgo, RejectsDegenerateCoefficient) {
  BeltramiCoefficient mu = beltrami_coefficient(Conductivity::unit(), 16, 2.1);
  mu.mu[40] = 1.0;
  mu.kappa = 1.0;
  EXPECT_THROW(solve_beltrami_cgo(mu, 1.0), ArgumentError);
}

TEST(BeltramiCgo, DistortionInequality) {
  for (cplx k : {cplx(1.0, 0.0), cplx(-2.0, 1.0)}) {
    const BeltramiCgo f = solve_beltrami_cgo(two_layer_mu(), k);
    EXPECT_LE(distortion_excess(two_layer_mu(), f), 1e-8) << k;
  }
}

TEST(BeltramiCgo, RealPartIsSigmaHarmonic) {
  const Conductivity s = Conductivity::two_layer(2.0, 0.5, 0.6);
  const BeltramiCgo f = solve_beltrami_cgo(two_layer_mu(), 1.0);
  EXPECT_LT(sigma_harmonic_weak_residual(s, f), 1e-2);
}

TEST(Tau, AntisymmetricInMu) {
  for (cplx k : {cplx(1.0, 0.0), cplx(0.5, -2.0)}) {
    const cplx a = ap_transform(two_layer_mu(), k).tau;
    const cplx b = ap_transform(negated(two_layer_mu()), k).tau;
    EXPECT_NEAR(std::abs(a + b), 0.0, 1e-12 * std::max(1.0, std::abs(a))) << k;
  }
}

TEST(Tau, IntegrandSupportedInsideR1) {
  const TauSample s = ap_transform(two_layer_mu(), cplx(1.0, 1.0));
  EXPECT_LE(tau_integrand_support(s, 1e-10), 0.6 + 2 * two_layer_mu().grid.h());
}

TEST(Tau, BridgeToBoundaryTransform) {
  const Conductivity bump = Conductivity::bump(0.3, 0.6);
  const BeltramiCoefficient mu = beltrami_coefficient(bump);
  const DnMatrix a = dn_difference(bump, 16, mesh_for(bump, 256));
  for (cplx k : {cplx(1.0, 0.0), cplx(1.0, 1.0), cplx(0.0, 2.0)}) {
    const cplx tb = boundary_transform_at(k, a);
    const cplx tt = t_from_tau(k, ap_transform(mu, k).tau);
    EXPECT_NEAR(std::abs(tb - tt), 0.0, 1e-4 * std::max(1.0, std::abs(tb))) << k;
  }
}

TEST(Tau, PolarGridCarriesBeltramiTag) {
  const BeltramiCoefficient mu = beltrami_coefficient(Conductivity::unit(), 32, 2.1);
  const ScatteringTransform t = tau_transform(mu, PolarGrid{1.0, 1, 2});
  EXPECT_EQ(t.source, TransformSource::kBeltrami);
  EXPECT_EQ(t.values.size(), 2u);
}

TEST(WeakProbe, ConstantSequenceGivesConstantPairings) {
  const std::vector<BumpTest> tests = {{cplx(0.0, 0.0), 0.3}, {cplx(0.3, 0.2), 0.25}};
  const auto p = weak_convergence_probe({two_layer_mu(), two_layer_mu()}, 1.0, tests);
  ASSERT_EQ(p.size(), 2u);
  for (std::size_t t = 0; t < tests.size(); ++t) {
    EXPECT_EQ(p[0][t].with_phi, p[1][t].with_phi);
    EXPECT_EQ(p[0][t].with_dbar_phi, p[1][t].with_dbar_phi);
  }
}

TEST(WeakProbe, MonotoneSequenceConverges) {
  const ApproximationSequence seq =
      monotone_sequence(Conductivity::two_layer(2.0, 0.5, 0.6), {2, 4, 8, 16}, 128);
  std::vector<BeltramiCoefficient> mus;
  for (const Conductivity& c : seq.members) mus.push_back(beltrami_coefficient(c));
  mus.push_back(two_layer_mu());
  const std::vector<BumpTest> tests = {{cplx(0.0, 0.0), 0.45}, {cplx(0.35, 0.1), 0.3}};
  const auto p = weak_convergence_probe(mus, 1.0, tests);
  for (std::size_t t = 0; t < tests.size(); ++t) {
    const cplx limit = p.back()[t].with_phi;
    const double first = std::abs(p[0][t].with_phi - limit), last = std::abs(p[3][t].with_phi - limit);
    EXPECT_LT(last, 0.5 * first) << t;
  }
}
