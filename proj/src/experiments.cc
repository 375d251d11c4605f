#include "nachman/experiments.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "nachman/errors.h"
#include "nachman/faddeev.h"
#include "nachman/forward_solver.h"
#include "nachman/nachman_bie.h"
#include "nachman/parallel.h"

namespace nachman {
namespace {

Conductivity with_ramp(const Conductivity& base, double w) {
  if (const auto* p = std::get_if<PiecewiseRadial>(&base.shape())) {
    PiecewiseRadial s = *p;
    s.ramp_width = w;
    return Conductivity(s, base.r1());
  }
  Inclusion s = std::get<Inclusion>(base.shape());
  s.ramp_width = w;
  return Conductivity(s, base.r1());
}

bool ramp_fits(const Conductivity& base, double w) {
  try {
    with_ramp(base, w);
    return true;
  } catch (const ArgumentError&) {
    return false;
  }
}

Eigen::VectorXd h12_weights(int order) {
  Eigen::VectorXd w(2 * order + 1);
  for (int i = 0; i <= 2 * order; ++i) w(i) = 1.0 / std::sqrt(1.0 + std::abs(i - order));
  return w;
}

Eigen::MatrixXcd complement_rows(const Eigen::MatrixXcd& a, int order, int j) {
  Eigen::MatrixXcd out = a;
  for (int i = -j; i <= j; ++i) out.row(i + order).setZero();
  return out;
}

Eigen::MatrixXcd complement_cols(const Eigen::MatrixXcd& a, int order, int j) {
  Eigen::MatrixXcd out = a;
  for (int i = -j; i <= j; ++i) out.col(i + order).setZero();
  return out;
}

Eigen::MatrixXcd block(const Eigen::MatrixXcd& a, int order, int j) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(a.rows(), a.cols());
  out.block(order - j, order - j, 2 * j + 1, 2 * j + 1) = a.block(order - j, order - j, 2 * j + 1, 2 * j + 1);
  return out;
}

struct BoundaryData {
  DnMatrix a;
  std::vector<CgoTrace> g;
  std::vector<cplx> t;
};

BoundaryData boundary_data(const Conductivity& sigma, const std::vector<cplx>& kset, int nodes,
                           const StudyConfig& config, const std::vector<SingleLayer>& layers) {
  BoundaryData d;
  const FemMesh mesh = mesh_for(sigma, nodes);
  d.a = dn_difference(sigma, config.order, mesh);
  for (std::size_t i = 0; i < kset.size(); ++i) {
    d.g.push_back(solve_bie(kset[i], d.a, layers[i]));
    d.t.push_back(scattering_transform_boundary(kset[i], d.a, d.g.back()));
  }
  return d;
}

std::vector<double> max_tails(const DnMatrix& a) {
  std::vector<double> out;
  for (int j = 0; j <= a.order; ++j) {
    const auto t = tail_bound(a, j);
    out.push_back(std::max(t[0], t[1]));
  }
  return out;
}

}  // namespace

ApproximationSequence monotone_sequence(const Conductivity& base, const std::vector<int>& n_values, int points) {
  if (n_values.empty()) throw ArgumentError("sequence needs at least one member");
  for (std::size_t i = 0; i < n_values.size(); ++i)
    if (n_values[i] < 1 || (i && n_values[i] <= n_values[i - 1]))
      throw ArgumentError("sequence indices must be positive and increasing");
  ApproximationSequence seq{base, n_values, {}, {}, base.r1(), std::min(1.0, base.ess_inf()), {}};
  if (base.is_unit()) {
    seq.ramp_widths.assign(n_values.size(), 0.0);
    seq.members.assign(n_values.size(), base);
  } else {
    const auto kind = base.kind();
    if (kind != ConductivityKind::kPiecewiseRadial && kind != ConductivityKind::kInclusion)
      throw UnsupportedPhantomError("monotone smoothing needs a piecewise-constant radial or inclusion phantom, got " +
                                    to_string(kind));
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (ramp_fits(base, mid) ? lo : hi) = mid;
    }
    // keep the innermost mesh ring away from the centre
    const double cap = 0.98 * lo;
    for (int n : n_values) {
      const double w = std::min(1.0 / n, cap);
      seq.ramp_widths.push_back(w);
      seq.members.push_back(with_ramp(base, w));
    }
  }

  SequenceCheck& c = seq.check;
  c.grid_points = points;
  for (int j = 0; j < points; ++j)
    for (int i = 0; i < points; ++i) {
      const double x = -1.0 + 2.0 * (i + 0.5) / points, y = -1.0 + 2.0 * (j + 0.5) / points;
      const double target = base(x, y);
      const bool outside = std::hypot(x, y) >= seq.r1;
      double prev = 0.0;
      for (std::size_t m = 0; m < seq.members.size(); ++m) {
        const double v = seq.members[m](x, y);
        if (outside && v != 1.0) ++c.outside_violations;
        if (v < seq.lower_bound) ++c.lower_violations;
        if (v > target || (m && prev > v)) ++c.monotone_violations;
        prev = v;
      }
    }
  return seq;
}

double operator_norm_h12(const Eigen::MatrixXcd& a) {
  const int order = static_cast<int>(a.rows() / 2);
  const Eigen::VectorXd w = h12_weights(order);
  const Eigen::MatrixXcd m = w.asDiagonal() * a * w.asDiagonal();
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

double operator_norm_h12(const DnMatrix& a) { return operator_norm_h12(a.entries); }

std::array<double, 2> tail_bound(const DnMatrix& a, int j) {
  if (j < 0 || j > a.order) throw ArgumentError("tail index must lie in [0, N]");
  return {operator_norm_h12(complement_rows(a.entries, a.order, j)),
          operator_norm_h12(complement_cols(a.entries, a.order, j))};
}

SplittingCheck splitting_check(const DnMatrix& an, const DnMatrix& a, int j) {
  if (an.order != a.order) throw ArgumentError("matrix orders differ");
  if (j < 0 || j > a.order) throw ArgumentError("block index must lie in [0, N]");
  const int n = a.order;
  const Eigen::MatrixXcd d = an.entries - a.entries;
  SplittingCheck s;
  s.full = operator_norm_h12(d);
  s.block = operator_norm_h12(block(d, n, j));
  s.left_tail = operator_norm_h12(complement_rows(d, n, j));
  s.right_tail = operator_norm_h12(complement_cols(d - complement_rows(d, n, j), n, j));
  return s;
}

ConvergenceReport convergence_study(const ApproximationSequence& seq, const std::vector<cplx>& kset,
                                    const StudyConfig& config) {
  if (config.levels < 1) throw ArgumentError("study needs at least one mesh level");
  ConvergenceReport r{to_string(seq.base.kind()), seq.r1, config.order, config.half_nodes, kset, seq.n_values, {}};
  std::vector<SingleLayer> layers;
  for (cplx k : kset) layers.emplace_back(k, config.order, config.half_nodes);

  // base data on levels 0..levels (the extra level measures the floor of the last one)
  std::vector<BoundaryData> base(static_cast<std::size_t>(config.levels + 1));
  parallel_for(base.size(), [&](std::size_t l) {
    base[l] = boundary_data(seq.base, kset, config.boundary_nodes << l, config, layers);
  });

  BoundaryField f(config.order);
  if (config.order >= 1) f[1] = f[-1] = 1.0 / std::sqrt(2.0);

  for (int l = 0; l < config.levels; ++l) {
    const BoundaryData& b = base[static_cast<std::size_t>(l)];
    const BoundaryData& finer = base[static_cast<std::size_t>(l + 1)];
    StudyLevel level;
    level.boundary_nodes = config.boundary_nodes << l;
    level.t_base = b.t;
    level.base_tails = max_tails(b.a);
    level.op_floor = operator_norm_h12(b.a.entries - finer.a.entries);
    for (std::size_t i = 0; i < kset.size(); ++i) level.t_floor.push_back(std::abs(b.t[i] - finer.t[i]));
    level.entries.resize(seq.members.size());
    parallel_for(seq.members.size(), [&](std::size_t m) {
      const BoundaryData d = boundary_data(seq.members[m], kset, level.boundary_nodes, config, layers);
      StudyEntry& e = level.entries[m];
      e.n = seq.n_values[m];
      e.op_norm = operator_norm_h12(d.a.entries - b.a.entries);
      e.tails = max_tails(d.a);
      for (std::size_t i = 0; i < kset.size(); ++i) {
        e.t.push_back(d.t[i]);
        e.t_error.push_back(std::abs(d.t[i] - b.t[i]));
        e.g_distance.push_back(hs_norm(d.g[i].g - b.g[i].g, SobolevIndex(0.5)));
      }
      e.form_gap = bilinear_pairing(f, (b.a - d.a).apply(f)).real();
      for (int j = 0; j <= config.order; ++j) e.splitting.push_back(splitting_check(d.a, b.a, j));
    });
    r.levels.push_back(std::move(level));
  }
  return r;
}

std::vector<SplittingCheck> weak_to_norm_decomposition_check(const ApproximationSequence& seq, int j,
                                                             const StudyConfig& config) {
  if (j < 0 || j > config.order) throw ArgumentError("block index must lie in [0, N]");
  const DnMatrix a = dn_difference(seq.base, config.order, mesh_for(seq.base, config.boundary_nodes));
  std::vector<SplittingCheck> out(seq.members.size());
  parallel_for(seq.members.size(), [&](std::size_t m) {
    const Conductivity& s = seq.members[m];
    out[m] = splitting_check(dn_difference(s, config.order, mesh_for(s, config.boundary_nodes)), a, j);
  });
  return out;
}

void to_json(nlohmann::json& j, const ConvergenceReport& r) {
  auto cjson = [](cplx z) { return nlohmann::json::array({z.real(), z.imag()}); };
  nlohmann::json ks = nlohmann::json::array();
  for (cplx k : r.kset) ks.push_back(cjson(k));
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : r.levels) {
    nlohmann::json tb = nlohmann::json::array(), entries = nlohmann::json::array();
    for (cplx t : l.t_base) tb.push_back(cjson(t));
    for (const auto& e : l.entries) {
      nlohmann::json t = nlohmann::json::array(), split = nlohmann::json::array();
      for (cplx v : e.t) t.push_back(cjson(v));
      for (const auto& s : e.splitting)
        split.push_back({{"full", s.full}, {"block", s.block}, {"left_tail", s.left_tail}, {"right_tail", s.right_tail}});
      entries.push_back({{"n", e.n},
                         {"op_norm", e.op_norm},
                         {"tails", e.tails},
                         {"t", t},
                         {"t_error", e.t_error},
                         {"g_distance_h12", e.g_distance},
                         {"form_gap", e.form_gap},
                         {"splitting", split}});
    }
    levels.push_back({{"boundary_nodes", l.boundary_nodes},
                      {"t_base", tb},
                      {"base_tails", l.base_tails},
                      {"op_floor", l.op_floor},
                      {"t_floor", l.t_floor},
                      {"entries", entries}});
  }
  j = {{"phantom", r.phantom}, {"r1", r.r1},         {"order", r.order},       {"half_nodes", r.half_nodes},
       {"kset", ks},           {"n_values", r.n_values}, {"levels", levels}};
}

void write_entries_csv(std::ostream& os, const ConvergenceReport& r, int level) {
  const StudyLevel& l = r.levels.at(static_cast<std::size_t>(level));
  os << "n,op_norm,form_gap";
  for (std::size_t i = 0; i < r.kset.size(); ++i)
    os << ",re_t" << i << ",im_t" << i << ",t_error" << i << ",g_distance" << i;
  os << '\n' << std::setprecision(12);
  for (const auto& e : l.entries) {
    os << e.n << ',' << e.op_norm << ',' << e.form_gap;
    for (std::size_t i = 0; i < r.kset.size(); ++i)
      os << ',' << e.t[i].real() << ',' << e.t[i].imag() << ',' << e.t_error[i] << ',' << e.g_distance[i];
    os << '\n';
  }
}

void write_tails_csv(std::ostream& os, const ConvergenceReport& r, int level) {
  const StudyLevel& l = r.levels.at(static_cast<std::size_t>(level));
  os << "n,j,tail\n" << std::setprecision(12);
  for (const auto& e : l.entries)
    for (std::size_t j = 0; j < e.tails.size(); ++j) os << e.n << ',' << j << ',' << e.tails[j] << '\n';
}

std::string gnuplot_script(const std::string& entries_csv, const std::string& tails_csv, std::size_t k_count) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set terminal pngcairo size 1200,400\n"
    << "set output 'study.png'\n"
    << "set multiplot layout 1,3\n"
    << "set logscale xy\n"
    << "set xlabel 'n'\n"
    << "set title 'weighted norm of A_n - A'\n"
    << "plot '" << entries_csv << "' every ::1 using 1:2 with linespoints notitle\n"
    << "set title '|t_n(k) - t(k)|'\n"
    << "plot";
  for (std::size_t i = 0; i < k_count; ++i)
    s << (i ? "," : "") << " '" << entries_csv << "' every ::1 using 1:" << 6 + 4 * i << " with linespoints title 'k"
      << i << "'";
  s << "\nunset logscale x\n"
    << "set xlabel 'j'\n"
    << "set title 'tail bound'\n"
    << "plot '" << tails_csv << "' every ::1 using 2:3:1 with points palette notitle\n"
    << "unset multiplot\n";
  return s.str();
}

}  // namespace nachman
