// nachman: command line front end for the forward, transform, reconstruction
// and study pipelines.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "nachman/beltrami.h"
#include "nachman/dbar.h"
#include "nachman/errors.h"
#include "nachman/experiments.h"
#include "nachman/forward_solver.h"
#include "nachman/lippmann_schwinger.h"
#include "nachman/nachman_bie.h"
#include "nachman/parallel.h"

using namespace nachman;

namespace {

PolarGrid parse_polar(const std::string& spec, double radius) {
  std::smatch m;
  static const std::regex re(R"(^\s*(\d+)\s*[xX]\s*(\d+)\s*$)");
  if (!std::regex_match(spec, m, re)) throw ArgumentError("grid must look like 8x8, got '" + spec + "'");
  return {radius, std::stoi(m[1]), std::stoi(m[2])};
}

cplx parse_complex(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  static const std::regex full(R"(^([+-]?[0-9.eE]+)([+-][0-9.eE]*)i$)");
  static const std::regex imag(R"(^([+-]?[0-9.eE]*)i$)");
  static const std::regex real(R"(^[+-]?[0-9.eE]+$)");
  auto num = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return std::stod(t);
  };
  std::smatch m;
  if (std::regex_match(s, m, full)) return {std::stod(m[1]), num(m[2])};
  if (std::regex_match(s, m, imag)) return {0.0, num(m[1])};
  if (std::regex_match(s, real)) return {std::stod(s), 0.0};
  throw ArgumentError("cannot parse complex number '" + s + "'");
}

template <typename F>
void with_output(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path);
  write(out);
}

std::string sibling(const std::string& path, const std::string& suffix) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  const std::string stem = dot != std::string::npos && (slash == std::string::npos || dot > slash) ? path.substr(0, dot) : path;
  return stem + suffix;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"D-bar reconstruction toolkit for the 2-D inverse conductivity problem"};
  app.require_subcommand(1);

  // dn
  std::string dn_phantom, dn_out = "-", dn_csv;
  int dn_order = 16, dn_nodes = 256;
  bool dn_full = false;
  auto* dn = app.add_subcommand("dn", "DN matrix (difference by default) of a phantom");
  dn->add_option("--phantom", dn_phantom, "phantom JSON")->required();
  dn->add_option("--N", dn_order, "Fourier truncation order");
  dn->add_option("--nodes", dn_nodes, "boundary nodes of the mesh");
  dn->add_flag("--full", dn_full, "emit Lambda_sigma instead of Lambda_sigma - Lambda_1");
  dn->add_option("--out", dn_out, "JSON output (default stdout)");
  dn->add_option("--csv", dn_csv, "CSV of the diagonal");

  // tks
  std::string tks_phantom, tks_grid = "8x8", tks_method = "boundary", tks_out = "-", tks_json;
  double tks_r = 6.0;
  int tks_order = 16, tks_nodes = 256;
  auto* tks = app.add_subcommand("tks", "scattering transform on a polar k-grid");
  tks->add_option("--phantom", tks_phantom, "phantom JSON")->required();
  tks->add_option("--R", tks_r, "cutoff radius");
  tks->add_option("--grid", tks_grid, "radial x angular samples");
  tks->add_option("--method", tks_method, "boundary or direct")->check(CLI::IsMember({"boundary", "direct"}));
  tks->add_option("--N", tks_order, "Fourier truncation order");
  tks->add_option("--nodes", tks_nodes, "boundary nodes of the mesh");
  tks->add_option("--out", tks_out, "CSV output (default stdout)");
  tks->add_option("--json", tks_json, "JSON output");

  // recon
  std::string rec_t, rec_truth, rec_out = "-", rec_metrics;
  double rec_r = 4.0;
  int rec_xgrid = 32, rec_kpoints = 0;
  auto* rec = app.add_subcommand("recon", "reconstruct sigma from scattering data");
  rec->add_option("--t", rec_t, "transform CSV")->required();
  rec->add_option("--R", rec_r, "cutoff radius");
  rec->add_option("--xgrid", rec_xgrid, "sample points per side over [-1,1]^2");
  rec->add_option("--k-points", rec_kpoints, "k-grid points per side (0 = automatic)");
  rec->add_option("--phantom", rec_truth, "ground-truth phantom for error metrics");
  rec->add_option("--out", rec_out, "CSV output (default stdout)");
  rec->add_option("--metrics", rec_metrics, "JSON metrics output");

  // tau
  std::string tau_phantom, tau_grid = "8x8", tau_out = "-";
  double tau_r = 6.0;
  auto* tau = app.add_subcommand("tau", "Beltrami transform tau on a polar k-grid");
  tau->add_option("--phantom", tau_phantom, "phantom JSON")->required();
  tau->add_option("--k-grid", tau_grid, "radial x angular samples");
  tau->add_option("--R", tau_r, "outer radius of the k-grid");
  tau->add_option("--out", tau_out, "CSV output (default stdout)");

  // study
  std::string st_phantom, st_n = "2,4,8,16,32", st_k = "1+0i,0+1i,2+0i", st_out = "report.json";
  int st_levels = 2, st_order = 16, st_nodes = 256;
  auto* study = app.add_subcommand("study", "convergence study for a monotone smoothing sequence");
  study->add_option("--phantom", st_phantom, "discontinuous phantom JSON")->required();
  study->add_option("--n", st_n, "comma separated sequence indices");
  study->add_option("--k", st_k, "comma separated k values");
  study->add_option("--levels", st_levels, "mesh levels");
  study->add_option("--N", st_order, "Fourier truncation order");
  study->add_option("--nodes", st_nodes, "boundary nodes of the coarsest mesh");
  study->add_option("--out", st_out, "report JSON (CSV tables and a gnuplot script are written alongside)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*dn) {
      const Conductivity sigma = load_conductivity(dn_phantom);
      const FemMesh mesh = mesh_for(sigma, dn_nodes);
      const DnMatrix a = dn_full ? assemble_dn_map(sigma, dn_order, mesh) : dn_difference(sigma, dn_order, mesh);
      with_output(dn_out, [&](std::ostream& os) { os << nlohmann::json(a).dump() << '\n'; });
      if (!dn_csv.empty()) with_output(dn_csv, [&](std::ostream& os) { write_diagonal_csv(os, a); });
    } else if (*tks) {
      const Conductivity sigma = load_conductivity(tks_phantom);
      const PolarGrid grid = parse_polar(tks_grid, tks_r);
      ScatteringTransform t;
      if (tks_method == "boundary") {
        const FemMesh mesh = mesh_for(sigma, tks_nodes);
        const DnMatrix a = dn_difference(sigma, tks_order, mesh);
        t = sample_transform(grid, tks_r, TransformSource::kBoundary, [&](cplx k) {
          const SingleLayer sk(k, tks_order);
          const CgoTrace g = solve_bie(k, a, sk);
          if (g.near_singular) std::cerr << "warning: near-singular boundary system at k = " << k << '\n';
          return scattering_transform_boundary(k, a, g);
        });
      } else {
        const Potential q = sample_potential(sigma);
        t = sample_transform(grid, tks_r, TransformSource::kDirect, [&](cplx k) {
          return scattering_transform_direct(k, q, solve_lippmann_schwinger(k, q));
        });
      }
      with_output(tks_out, [&](std::ostream& os) { write_csv(os, t); });
      if (!tks_json.empty()) with_output(tks_json, [&](std::ostream& os) { os << nlohmann::json(t).dump(1) << '\n'; });
    } else if (*rec) {
      const ScatteringTransform t = load_transform_csv(rec_t, rec_r);
      DbarOptions opt;
      opt.points = rec_kpoints;
      std::optional<Conductivity> truth;
      if (!rec_truth.empty()) truth = load_conductivity(rec_truth);
      const Reconstruction r = reconstruct_sigma(t, disc_sample_points(rec_xgrid), opt, truth ? &*truth : nullptr);
      with_output(rec_out, [&](std::ostream& os) { write_csv(os, r); });
      if (!rec_metrics.empty())
        with_output(rec_metrics, [&](std::ostream& os) { os << metrics_json(r).dump(1) << '\n'; });
      if (r.positivity_violations > 0)
        std::cerr << "warning: " << r.positivity_violations << " nonpositive reconstructed values\n";
    } else if (*tau) {
      const Conductivity sigma = load_conductivity(tau_phantom);
      const ScatteringTransform t = tau_transform(beltrami_coefficient(sigma), parse_polar(tau_grid, tau_r));
      with_output(tau_out, [&](std::ostream& os) { write_csv(os, t); });
    } else if (*study) {
      const Conductivity sigma = load_conductivity(st_phantom);
      std::vector<int> ns;
      std::vector<cplx> ks;
      std::stringstream nss(st_n), kss(st_k);
      for (std::string tok; std::getline(nss, tok, ',');) ns.push_back(std::stoi(tok));
      for (std::string tok; std::getline(kss, tok, ',');) ks.push_back(parse_complex(tok));
      const ApproximationSequence seq = monotone_sequence(sigma, ns);
      StudyConfig cfg;
      cfg.levels = st_levels;
      cfg.order = st_order;
      cfg.boundary_nodes = st_nodes;
      const ConvergenceReport report = convergence_study(seq, ks, cfg);
      nlohmann::json j = report;
      j["sequence_check"] = {{"grid_points", seq.check.grid_points},
                             {"outside_violations", seq.check.outside_violations},
                             {"lower_violations", seq.check.lower_violations},
                             {"monotone_violations", seq.check.monotone_violations}};
      j["ramp_widths"] = seq.ramp_widths;
      with_output(st_out, [&](std::ostream& os) { os << j.dump(1) << '\n'; });
      const std::string entries = sibling(st_out, "_entries.csv"), tails = sibling(st_out, "_tails.csv");
      with_output(entries, [&](std::ostream& os) { write_entries_csv(os, report); });
      with_output(tails, [&](std::ostream& os) { write_tails_csv(os, report); });
      auto base = [](const std::string& p) { return p.substr(p.find_last_of('/') + 1); };
      with_output(sibling(st_out, ".gp"),
                  [&](std::ostream& os) { os << gnuplot_script(base(entries), base(tails), ks.size()); });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
