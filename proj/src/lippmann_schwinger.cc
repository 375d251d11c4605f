#include "nachman/lippmann_schwinger.h"

#include <cmath>
#include <limits>

#include "nachman/errors.h"
#include "nachman/faddeev.h"
#include "nachman/parallel.h"

namespace nachman {
namespace {

const cplx kI(0.0, 1.0);

}  // namespace

Potential sample_potential(const Conductivity& sigma, int points, double half_width) {
  if (!sigma.is_smooth() && !sigma.is_unit())
    throw UnsupportedPhantomError("the potential needs a twice differentiable conductivity");
  Potential q{PeriodicGrid(points, half_width), {}, sigma.r1()};
  if (2.0 * q.support_radius > half_width)
    throw ArgumentError("grid box too small for the potential support");
  q.values.assign(q.grid.size(), 0.0);
  if (sigma.is_unit()) return q;
  for (std::size_t i = 0; i < q.values.size(); ++i) {
    const cplx x = q.grid.point(i);
    if (std::abs(x) < q.support_radius) q.values[i] = sigma.schrodinger_potential(x.real(), x.imag());
  }
  return q;
}

CgoField solve_lippmann_schwinger(cplx k, const Potential& q, const GmresOptions& options) {
  const PeriodicGrid& grid = q.grid;
  // Truncated kernels are exact for |x - y| <= 2 rq and the period 2L clears
  // the support: wrap-around never reaches points of the support.
  const double radius = grid.half_width;
  const Convolution log_part = log_convolution(grid, radius);
  Field mult = log_part.multiplier();
  if (k != cplx(0.0)) {
    const Field smooth = sampled_multiplier(grid, radius, [&](cplx d) { return faddeev_smooth_part(k, d); });
    for (std::size_t i = 0; i < mult.size(); ++i) mult[i] += smooth[i];
  }
  const Convolution gk(grid, std::move(mult));

  const std::size_t size = grid.size();
  Field ekx(size), emkx(size);
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < size; ++i) {
    const cplx x = grid.point(i);
    ekx[i] = std::exp(kI * k * x);
    emkx[i] = 1.0 / ekx[i];
    if (q.values[i] != 0.0) support.push_back(i);
  }
  // g_k * f = e^{-ikx} (G_k * (e^{iky} f)); unknowns are m on the support of q.
  auto convolve = [&](const Eigen::VectorXcd& ms) {
    Field f(size, 0.0);
    for (std::size_t s = 0; s < support.size(); ++s) {
      const std::size_t i = support[s];
      f[i] = ekx[i] * q.values[i] * ms(static_cast<Eigen::Index>(s));
    }
    return gk.apply(f);
  };
  const auto n = static_cast<Eigen::Index>(support.size());
  auto apply = [&](const Eigen::VectorXcd& ms) {
    const Field c = convolve(ms);
    Eigen::VectorXcd out(n);
    for (Eigen::Index s = 0; s < n; ++s) {
      const std::size_t i = support[static_cast<std::size_t>(s)];
      out(s) = ms(s) + emkx[i] * c[i];
    }
    return out;
  };
  CgoField out{grid, k, Field(size, cplx(std::numeric_limits<double>::quiet_NaN(), 0.0)),
               grid.half_width - q.support_radius};
  Eigen::VectorXcd ms = Eigen::VectorXcd::Ones(n);
  if (n > 0) {
    const GmresResult r = gmres<cplx>(apply, Eigen::VectorXcd::Ones(n), ms, options);
    out.iterations = r.iterations;
    out.residual = r.relative_residual;
  }
  const Field c = n > 0 ? convolve(ms) : Field(size, 0.0);
  for (std::size_t i = 0; i < size; ++i)
    if (std::abs(grid.point(i)) <= out.valid_radius) out.m[i] = 1.0 - emkx[i] * c[i];
  for (Eigen::Index s = 0; s < n; ++s) out.m[support[static_cast<std::size_t>(s)]] = ms(s);
  return out;
}

cplx scattering_transform_direct(cplx k, const Potential& q, const CgoField& m) {
  const double h = q.grid.h();
  cplx acc = 0.0;
  for (std::size_t i = 0; i < q.values.size(); ++i) {
    if (q.values[i] == 0.0) continue;
    const cplx x = q.grid.point(i);
    const cplx ek = std::exp(kI * (k * x + std::conj(k) * std::conj(x)));
    acc += ek * q.values[i] * m.m[i];
  }
  return acc * h * h;
}

BoundaryField cgo_boundary_trace(const Potential& q, const CgoField& m, int order, int nodes) {
  const double h = q.grid.h();
  const cplx k = m.k;
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < q.values.size(); ++i)
    if (q.values[i] != 0.0) support.push_back(i);
  std::vector<cplx> psi(static_cast<std::size_t>(nodes));
  parallel_for(psi.size(), [&](std::size_t j) {
    const cplx x = std::polar(1.0, kTwoPi * static_cast<double>(j) / nodes);
    // psi(x) = e^{ikx} - int G_k(x - y) q(y) psi(y) dy
    cplx acc = 0.0;
    for (std::size_t i : support) {
      const cplx y = q.grid.point(i);
      acc += faddeev_G(k, x - y) * q.values[i] * std::exp(kI * k * y) * m.m[i];
    }
    psi[j] = std::exp(kI * k * x) - acc * h * h;
  });
  return BoundaryField::from_samples(order, nodes, [&](double t) {
    return psi[static_cast<std::size_t>(std::lround(t / kTwoPi * nodes)) % psi.size()];
  });
}

}  // namespace nachman
