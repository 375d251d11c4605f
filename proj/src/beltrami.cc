#include "nachman/beltrami.h"

#include <cmath>
#include <limits>

#include "nachman/errors.h"
#include "nachman/parallel.h"

namespace nachman {
namespace {

const cplx kI(0.0, 1.0);

// Truncation radius of the Cauchy and Beurling kernels: the box must hold
// every difference of two support points without wrap-around.
double kernel_radius(const BeltramiCoefficient& mu) { return mu.grid.half_width; }

cplx e_minus(cplx k, cplx x) { return std::exp(cplx(0.0, -2.0 * (k * x).real())); }

}  // namespace

BeltramiCoefficient beltrami_coefficient(const Conductivity& sigma, int points, double half_width) {
  BeltramiCoefficient mu{PeriodicGrid(points, half_width), {}, 0.0, sigma.r1()};
  if (2.0 * mu.support_radius > half_width) throw ArgumentError("grid box too small for the coefficient support");
  mu.mu.assign(mu.grid.size(), 0.0);
  for (std::size_t i = 0; i < mu.mu.size(); ++i) {
    const cplx x = mu.grid.point(i);
    if (std::abs(x) >= mu.support_radius) continue;
    const double s = sigma(x.real(), x.imag());
    mu.mu[i] = (1.0 - s) / (1.0 + s);
    mu.kappa = std::max(mu.kappa, std::abs(mu.mu[i]));
  }
  return mu;
}

BeltramiCoefficient negated(const BeltramiCoefficient& mu) {
  BeltramiCoefficient out = mu;
  for (double& v : out.mu) v = -v;
  return out;
}

BeltramiCgo solve_beltrami_cgo(const BeltramiCoefficient& mu, cplx k, const GmresOptions& options) {
  if (!(mu.kappa < 1.0)) throw ArgumentError("Beltrami coefficient needs sup |mu| < 1");
  const PeriodicGrid& grid = mu.grid;
  const double radius = kernel_radius(mu);
  const Convolution cauchy = cauchy_convolution(grid, radius);
  const Convolution beurling = beurling_convolution(grid, radius);
  std::vector<std::size_t> support;
  std::vector<cplx> coef;  // mu e_{-k}
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (mu.mu[i] != 0.0) {
      support.push_back(i);
      coef.push_back(mu.mu[i] * e_minus(k, grid.point(i)));
    }
  const std::size_t ns = support.size();
  auto spread = [&](const Eigen::VectorXd& u) {
    Field nu(grid.size(), 0.0);
    for (std::size_t s = 0; s < ns; ++s)
      nu[support[s]] = cplx(u(static_cast<Eigen::Index>(s)), u(static_cast<Eigen::Index>(ns + s)));
    return nu;
  };
  // nu - mu e_{-k} conj(ik C nu + S nu) = mu e_{-k} conj(ik)
  auto apply = [&](const Eigen::VectorXd& u) {
    const Field nu = spread(u);
    const Field c = cauchy.apply(nu);
    const Field s = beurling.apply(nu);
    Eigen::VectorXd out(2 * ns);
    for (std::size_t j = 0; j < ns; ++j) {
      const std::size_t i = support[j];
      const cplx v = nu[i] - coef[j] * std::conj(kI * k * c[i] + s[i]);
      out(static_cast<Eigen::Index>(j)) = v.real();
      out(static_cast<Eigen::Index>(ns + j)) = v.imag();
    }
    return out;
  };
  Eigen::VectorXd rhs(2 * ns);
  for (std::size_t j = 0; j < ns; ++j) {
    const cplx v = coef[j] * std::conj(kI * k);
    rhs(static_cast<Eigen::Index>(j)) = v.real();
    rhs(static_cast<Eigen::Index>(ns + j)) = v.imag();
  }
  BeltramiCgo out{grid, k, {}, {}, {}, grid.half_width - mu.support_radius};
  Eigen::VectorXd u = rhs;
  if (ns > 0 && rhs.norm() > 0.0) {
    const GmresResult r = gmres<double>(apply, rhs, u, options);
    out.iterations = r.iterations;
  } else {
    u.setZero(static_cast<Eigen::Index>(2 * ns));
  }
  out.dbar_m = spread(u);
  const Field c = cauchy.apply(out.dbar_m);
  out.d_m = beurling.apply(out.dbar_m);
  out.m.assign(grid.size(), cplx(std::numeric_limits<double>::quiet_NaN(), 0.0));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::abs(grid.point(i)) <= out.valid_radius) out.m[i] = 1.0 + c[i];
    const cplx expected = mu.mu[i] * e_minus(k, grid.point(i)) * std::conj(kI * k * (1.0 + c[i]) + out.d_m[i]);
    out.residual = std::max(out.residual, std::abs(out.dbar_m[i] - expected));
  }
  return out;
}

TauSample ap_transform(const BeltramiCoefficient& mu, cplx k, const GmresOptions& options) {
  TauSample s{0.0, solve_beltrami_cgo(mu, k, options), solve_beltrami_cgo(negated(mu), k, options)};
  cplx acc = 0.0;
  for (std::size_t i = 0; i < mu.grid.size(); ++i) acc += s.plus.dbar_m[i] - s.minus.dbar_m[i];
  const double h = mu.grid.h();
  s.tau = std::conj(acc * h * h / kTwoPi);
  return s;
}

ScatteringTransform tau_transform(const BeltramiCoefficient& mu, const PolarGrid& grid, const GmresOptions& options) {
  const BeltramiCoefficient minus = negated(mu);
  return sample_transform(grid, grid.radius, TransformSource::kBeltrami, [&](cplx k) {
    const BeltramiCgo p = solve_beltrami_cgo(mu, k, options);
    const BeltramiCgo m = solve_beltrami_cgo(minus, k, options);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < mu.grid.size(); ++i) acc += p.dbar_m[i] - m.dbar_m[i];
    const double h = mu.grid.h();
    return std::conj(acc * h * h / kTwoPi);
  });
}

cplx t_from_tau(cplx k, cplx tau) { return cplx(0.0, -4.0 * kPi) * std::conj(k) * tau; }

double distortion_excess(const BeltramiCoefficient& mu, const BeltramiCgo& f) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mu.grid.size(); ++i) {
    if (std::abs(mu.grid.point(i)) > f.valid_radius) continue;
    // |e^{ikz}| is common to both sides
    const double dbar = std::abs(f.dbar_m[i]);
    const double d = std::abs(cplx(0.0, 1.0) * f.k * f.m[i] + f.d_m[i]);
    worst = std::max(worst, dbar - mu.kappa * d);
  }
  return worst;
}

double tau_integrand_support(const TauSample& s, double tol) {
  double r = 0.0;
  for (std::size_t i = 0; i < s.plus.grid.size(); ++i)
    if (std::abs(s.plus.dbar_m[i] - s.minus.dbar_m[i]) > tol) r = std::max(r, std::abs(s.plus.grid.point(i)));
  return r;
}

double BumpTest::value(cplx x) const {
  const double s = std::norm(x - center) / (radius * radius);
  return s < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s)) : 0.0;
}

cplx BumpTest::dbar(cplx x) const {
  const double s = std::norm(x - center) / (radius * radius);
  if (s >= 1.0) return 0.0;
  // dbar |x - c|^2 = x - c
  return -value(x) / ((1.0 - s) * (1.0 - s)) * (x - center) / (radius * radius);
}

double sigma_harmonic_weak_residual(const Conductivity& sigma, const BeltramiCgo& f) {
  const PeriodicGrid& grid = f.grid;
  const std::vector<BumpTest> tests = {{{0.0, 0.0}, 0.45}, {{0.3, 0.2}, 0.4}, {{-0.25, 0.35}, 0.4},
                                       {{0.1, -0.45}, 0.35}, {{-0.5, -0.2}, 0.35}, {{0.55, -0.1}, 0.3}};
  double worst = 0.0;
  for (const auto& phi : tests) {
    cplx acc = 0.0;
    double flux2 = 0.0, grad2 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const cplx x = grid.point(i);
      if (std::abs(x - phi.center) >= phi.radius) continue;
      const cplx e = std::exp(cplx(0.0, 1.0) * f.k * x);
      const cplx df = e * (cplx(0.0, 1.0) * f.k * f.m[i] + f.d_m[i]);
      const cplx dbf = e * f.dbar_m[i];
      // u = Re f: u_x = Re(f_x), u_y = Re(f_y), f_x = d f + dbar f, f_y = i(d f - dbar f)
      const double ux = (df + dbf).real();
      const double uy = (cplx(0.0, 1.0) * (df - dbf)).real();
      // grad phi from dbar phi = (phi_x + i phi_y)/2
      const cplx dphi = phi.dbar(x);
      const double px = 2.0 * dphi.real(), py = 2.0 * dphi.imag();
      const double s = sigma(x.real(), x.imag());
      acc += s * (ux * px + uy * py);
      flux2 += s * s * (ux * ux + uy * uy);
      grad2 += px * px + py * py;
    }
    if (flux2 > 0.0 && grad2 > 0.0) worst = std::max(worst, std::abs(acc) / std::sqrt(flux2 * grad2));
  }
  return worst;
}

std::vector<std::vector<ProbePairing>> weak_convergence_probe(const std::vector<BeltramiCoefficient>& sequence,
                                                              cplx k, const std::vector<BumpTest>& tests,
                                                              const GmresOptions& options) {
  std::vector<std::vector<ProbePairing>> out(sequence.size());
  parallel_for(sequence.size(), [&](std::size_t n) {
    const BeltramiCgo f = solve_beltrami_cgo(sequence[n], k, options);
    const double h2 = f.grid.h() * f.grid.h();
    for (const auto& phi : tests) {
      ProbePairing p{0.0, 0.0};
      for (std::size_t i = 0; i < f.grid.size(); ++i) {
        const cplx x = f.grid.point(i);
        if (std::abs(x - phi.center) >= phi.radius) continue;
        p.with_phi += phi.value(x) * (f.m[i] - 1.0) * h2;
        p.with_dbar_phi += phi.dbar(x) * (f.m[i] - 1.0) * h2;
      }
      out[n].push_back(p);
    }
  });
  return out;
}

}  // namespace nachman
