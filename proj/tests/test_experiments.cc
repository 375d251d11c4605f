#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "nachman/errors.h"
#include "nachman/experiments.h"
#include "nachman/forward_solver.h"

using namespace nachman;

namespace {

double l1_gap(const Conductivity& a, const Conductivity& b, int n = 400) {
  const double h = 2.0 / n;
  double acc = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double x = -1.0 + (i + 0.5) * h, y = -1.0 + (j + 0.5) * h;
      acc += std::abs(a(x, y) - b(x, y)) * h * h;
    }
  return acc;
}

}  // namespace

TEST(MonotoneSequence, UnitGivesCopies) {
  const ApproximationSequence s = monotone_sequence(Conductivity::unit(), {2, 4}, 64);
  ASSERT_EQ(s.members.size(), 2u);
  for (const Conductivity& c : s.members) EXPECT_TRUE(c.is_unit());
}

TEST(MonotoneSequence, TwoLayerProperties) {
  const Conductivity base = Conductivity::two_layer(2.0, 0.5, 0.6);
  const ApproximationSequence s = monotone_sequence(base, {2, 4, 8, 16, 32}, 256);
  EXPECT_EQ(s.check.outside_violations, 0);
  EXPECT_EQ(s.check.lower_violations, 0);
  EXPECT_EQ(s.check.monotone_violations, 0);
  EXPECT_GT(s.lower_bound, 0.0);
  for (std::size_t i = 0; i + 1 < s.ramp_widths.size(); ++i) EXPECT_GE(s.ramp_widths[i], s.ramp_widths[i + 1]);
  for (double x : {0.1, 0.45, 0.49}) {
    EXPECT_LE(s.members[2](x, 0.0), s.members[3](x, 0.0));
    EXPECT_LE(s.members[3](x, 0.0), base(x, 0.0));
  }
  EXPECT_EQ(s.members[4](0.7, 0.1), 1.0);
}

TEST(MonotoneSequence, InclusionIsSupported) {
  const Conductivity base(Inclusion{{0.2, 0.1}, 0.25, 0.5, 0.0}, 0.6);
  const ApproximationSequence s = monotone_sequence(base, {4, 8}, 128);
  EXPECT_EQ(s.check.monotone_violations, 0);
  EXPECT_EQ(s.check.outside_violations, 0);
}

TEST(MonotoneSequence, L1GapShrinksLikeOneOverN) {
  const Conductivity base = Conductivity::two_layer(2.0, 0.5, 0.6);
  const ApproximationSequence s = monotone_sequence(base, {8, 16}, 64);
  const double g8 = l1_gap(s.members[0], base), g16 = l1_gap(s.members[1], base);
  EXPECT_GT(g16, 0.0);
  EXPECT_NEAR(g8 / g16, 2.0, 0.3);
}

TEST(MonotoneSequence, RejectsSmoothAndGridPhantoms) {
  EXPECT_THROW(monotone_sequence(Conductivity::bump(0.3, 0.6)), UnsupportedPhantomError);
  std::vector<double> cells(16, 1.0);
  cells[5] = cells[6] = cells[9] = cells[10] = 2.0;
  EXPECT_THROW(monotone_sequence(Conductivity(GridSampled{4, cells}, 0.8)), UnsupportedPhantomError);
}

TEST(OperatorNorm, DiagonalAbs) {
  for (int n : {2, 8, 16}) EXPECT_NEAR(operator_norm_h12(dn_map_identity(n)), n / (n + 1.0), 1e-13);
  EXPECT_EQ(operator_norm_h12(DnMatrix::zero(4, DnTag::kDifference)), 0.0);
}

TEST(TailBound, DiagonalAbs) {
  const DnMatrix d = dn_map_identity(6);
  for (int j = 0; j < 6; ++j) {
    const auto t = tail_bound(d, j);
    EXPECT_NEAR(t[0], 6.0 / 7.0, 1e-13);
    EXPECT_NEAR(t[1], 6.0 / 7.0, 1e-13);
  }
  const auto t = tail_bound(d, 6);
  EXPECT_EQ(t[0], 0.0);
  EXPECT_EQ(t[1], 0.0);
  EXPECT_THROW(tail_bound(d, 7), ArgumentError);
}

TEST(Splitting, TriangleInequalityAndFullRank) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Random(9, 9);
  const DnMatrix an(m, 4, DnTag::kDifference), a = DnMatrix::zero(4, DnTag::kDifference);
  for (int j = 0; j <= 4; ++j) EXPECT_GE(splitting_check(an, a, j).residual(), -1e-12);
  const SplittingCheck full = splitting_check(an, a, 4);
  EXPECT_NEAR(full.block, full.full, 1e-13);
  EXPECT_EQ(full.left_tail, 0.0);
  EXPECT_EQ(full.right_tail, 0.0);
}

TEST(ConvergenceStudy, SmallTwoLayerStudy) {
  const ApproximationSequence seq = monotone_sequence(Conductivity::two_layer(2.0, 0.5, 0.6), {4, 8, 16}, 128);
  const ConvergenceReport r = convergence_study(seq, {cplx(1.0, 0.0), cplx(0.0, 1.0)}, {8, 128, 64, 1});
  ASSERT_EQ(r.levels.size(), 1u);
  const StudyLevel& l = r.levels[0];
  ASSERT_EQ(l.entries.size(), 3u);
  for (std::size_t i = 0; i + 1 < l.entries.size(); ++i) {
    EXPECT_LT(l.entries[i + 1].op_norm, l.entries[i].op_norm);
    EXPECT_LT(l.entries[i + 1].t_error[0], l.entries[i].t_error[0]);
    EXPECT_LT(l.entries[i + 1].g_distance[1], l.entries[i].g_distance[1]);
  }
  for (const StudyEntry& e : l.entries) {
    EXPECT_GT(e.form_gap, 0.0);
    EXPECT_EQ(e.tails.size(), 9u);
    for (const SplittingCheck& c : e.splitting) EXPECT_GE(c.residual(), -1e-12);
  }
  EXPECT_LT(l.op_floor, l.entries.back().op_norm);

  std::stringstream entries, tails;
  write_entries_csv(entries, r);
  write_tails_csv(tails, r);
  std::string header;
  std::getline(entries, header);
  EXPECT_EQ(header.rfind("n,op_norm,form_gap", 0), 0u);
  std::getline(tails, header);
  EXPECT_EQ(header, "n,j,tail");
  const nlohmann::json j = r;
  EXPECT_EQ(j.at("levels").size(), 1u);
  EXPECT_NE(gnuplot_script("e.csv", "t.csv", 2).find("e.csv"), std::string::npos);
}

TEST(ConvergenceStudy, DecompositionCheck) {
  const ApproximationSequence seq = monotone_sequence(Conductivity::two_layer(2.0, 0.5, 0.6), {4, 8}, 64);
  const auto checks = weak_to_norm_decomposition_check(seq, 3, {8, 128, 64, 1});
  ASSERT_EQ(checks.size(), 2u);
  for (const SplittingCheck& c : checks) {
    EXPECT_GE(c.residual(), -1e-12);
    EXPECT_GT(c.block, 0.0);
  }
}
