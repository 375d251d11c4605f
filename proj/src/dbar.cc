#include "nachman/dbar.h"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "nachman/errors.h"
#include "nachman/parallel.h"

namespace nachman {

PeriodicGrid dbar_grid(double cutoff, const DbarOptions& options) {
  if (!(cutoff > 0.0)) throw ArgumentError("cutoff must be positive");
  if (!(options.grid_factor > 1.0)) throw ArgumentError("k-grid must extend beyond the cutoff");
  const double half = 2.0 * options.grid_factor * cutoff;
  int points = options.points;
  if (points == 0) points = fft_friendly_size(std::max(128, static_cast<int>(std::ceil(16.0 * 2.0 * half))));
  return PeriodicGrid(points, half);
}

DbarProblem::DbarProblem(const std::function<cplx(cplx)>& t, double cutoff, const DbarOptions& options)
    : grid_(dbar_grid(cutoff, options)),
      cutoff_(cutoff),
      gmres_(options.gmres),
      // Support and evaluation points lie in |k| <= R; truncation at 2.1 R
      // covers all differences and the period 4K keeps images away.
      cauchy_(cauchy_convolution(grid_, 2.1 * cutoff)) {
  if (grid_.h() > 1.0 / 16.0 + 1e-12)
    throw ResolutionError("k-grid needs at least 16 points per unit length, got spacing " +
                          std::to_string(grid_.h()));
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    const cplx k = grid_.point(i);
    const double r = std::abs(k);
    if (r == 0.0) origin_ = i;
    if (r > cutoff) continue;
    support_.push_back(i);
    // removable singularity: t(0) = 0 for conductivity data
    weight_.push_back(r == 0.0 ? cplx(0.0) : t(k) / (4.0 * kPi * std::conj(k)));
  }
  if (std::abs(grid_.point(origin_)) != 0.0) throw ArgumentError("k-grid does not contain k = 0");
}

DbarProblem::Solution DbarProblem::solve(cplx x) const {
  const std::size_t ns = support_.size();
  std::vector<cplx> a(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    const cplx k = grid_.point(support_[s]);
    // e_{-k}(x) = exp(-i(kx + conj(k x)))
    a[s] = weight_[s] * std::exp(cplx(0.0, -2.0 * (k * x).real()));
  }
  auto cauchy_term = [&](const Eigen::VectorXd& u) {
    Field f(grid_.size(), 0.0);
    for (std::size_t s = 0; s < ns; ++s) {
      const cplx m(u(static_cast<Eigen::Index>(s)), u(static_cast<Eigen::Index>(ns + s)));
      f[support_[s]] = a[s] * std::conj(m);
    }
    return cauchy_.apply(f);
  };
  auto apply = [&](const Eigen::VectorXd& u) {
    const Field c = cauchy_term(u);
    Eigen::VectorXd out(2 * ns);
    for (std::size_t s = 0; s < ns; ++s) {
      const cplx v = c[support_[s]];
      out(static_cast<Eigen::Index>(s)) = u(static_cast<Eigen::Index>(s)) - v.real();
      out(static_cast<Eigen::Index>(ns + s)) = u(static_cast<Eigen::Index>(ns + s)) - v.imag();
    }
    return out;
  };
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * ns));
  rhs.head(static_cast<Eigen::Index>(ns)).setOnes();
  Eigen::VectorXd u = rhs;
  const GmresResult r = gmres<double>(apply, rhs, u, gmres_);
  Solution out;
  out.iterations = r.iterations;
  out.residual = r.relative_residual;
  const Field c = cauchy_term(u);
  out.m.assign(grid_.size(), 0.0);
  for (std::size_t i = 0; i < grid_.size(); ++i) out.m[i] = 1.0 + c[i];
  for (std::size_t s = 0; s < ns; ++s)
    out.m[support_[s]] = cplx(u(static_cast<Eigen::Index>(s)), u(static_cast<Eigen::Index>(ns + s)));
  out.m0 = out.m[origin_];
  return out;
}

DbarProblem::Solution solve_dbar(cplx x, const ScatteringTransform& t, const DbarOptions& options) {
  return DbarProblem([&](cplx k) { return t(k); }, t.cutoff, options).solve(x);
}

std::vector<cplx> disc_sample_points(int n) {
  if (n < 2) throw ArgumentError("sample grid needs at least 2 points per side");
  std::vector<cplx> out;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const cplx x(-1.0 + 2.0 * i / (n - 1), -1.0 + 2.0 * j / (n - 1));
      if (std::abs(x) <= 1.0 + 1e-12) out.push_back(x);
    }
  return out;
}

double relative_l2(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ArgumentError("sample counts differ");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

Reconstruction reconstruct_sigma(const std::function<cplx(cplx)>& t, double cutoff, const std::vector<cplx>& xs,
                                 const DbarOptions& options, const Conductivity* truth) {
  const DbarProblem problem(t, cutoff, options);
  Reconstruction rec;
  rec.points = xs;
  rec.cutoff = cutoff;
  rec.k_points = problem.grid().n;
  rec.sigma.assign(xs.size(), 0.0);
  rec.imag_m.assign(xs.size(), 0.0);
  std::vector<cplx> m0(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { m0[i] = problem.solve(xs[i]).m0; });
  for (std::size_t i = 0; i < xs.size(); ++i) {
    rec.sigma[i] = m0[i].real() * m0[i].real();
    rec.imag_m[i] = m0[i].imag();
    rec.max_imag = std::max(rec.max_imag, std::abs(m0[i].imag()));
    if (!(rec.sigma[i] > 0.0)) ++rec.positivity_violations;
  }
  if (truth) {
    std::vector<double> exact(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) exact[i] = (*truth)(xs[i].real(), xs[i].imag());
    rec.relative_l2_error = relative_l2(rec.sigma, exact);
  }
  return rec;
}

Reconstruction reconstruct_sigma(const ScatteringTransform& t, const std::vector<cplx>& xs,
                                 const DbarOptions& options, const Conductivity* truth) {
  return reconstruct_sigma([&](cplx k) { return t(k); }, t.cutoff, xs, options, truth);
}

void write_csv(std::ostream& os, const Reconstruction& r) {
  os << "x1,x2,sigma_rec\n" << std::setprecision(12);
  for (std::size_t i = 0; i < r.points.size(); ++i)
    os << r.points[i].real() << ',' << r.points[i].imag() << ',' << r.sigma[i] << '\n';
}

nlohmann::json metrics_json(const Reconstruction& r) {
  nlohmann::json j = {{"cutoff", r.cutoff},
                      {"k_points_per_side", r.k_points},
                      {"samples", r.points.size()},
                      {"max_abs_imag_m0", r.max_imag},
                      {"positivity_violations", r.positivity_violations}};
  if (!r.sigma.empty()) {
    j["sigma_min"] = *std::min_element(r.sigma.begin(), r.sigma.end());
    j["sigma_max"] = *std::max_element(r.sigma.begin(), r.sigma.end());
  }
  if (r.relative_l2_error) j["relative_l2_error"] = *r.relative_l2_error;
  return j;
}

}  // namespace nachman
