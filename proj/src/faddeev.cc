#include "nachman/faddeev.h"

#include <cmath>

#include "nachman/errors.h"
#include "nachman/special_functions.h"

namespace nachman {
namespace {

constexpr double kInvTwoPi = 1.0 / kTwoPi;
const cplx kI(0.0, 1.0);

void require_nonzero(cplx x) {
  if (x == cplx(0.0)) throw DomainError("Faddeev kernel is singular at x = 0");
}

}  // namespace

double log_kernel(cplx x) {
  require_nonzero(x);
  return -kInvTwoPi * std::log(std::abs(x));
}

double faddeev_G(cplx k, cplx x) {
  require_nonzero(x);
  if (k == cplx(0.0)) return log_kernel(x);
  return kInvTwoPi * expint_e1(-kI * k * x).real();
}

cplx faddeev_g(cplx k, cplx x) { return std::exp(-kI * k * x) * faddeev_G(k, x); }

double faddeev_smooth_part(cplx k, cplx x) {
  if (k == cplx(0.0)) return 0.0;
  return kInvTwoPi * (expint_ein(-kI * k * x).real() - kEulerGamma - std::log(std::abs(k)));
}

std::array<double, 2> faddeev_gradient(cplx k, cplx x) {
  require_nonzero(x);
  const cplx d = -std::exp(kI * k * x) / x * kInvTwoPi;
  return {d.real(), -d.imag()};
}

SingleLayer::SingleLayer(cplx k, int order, int half_nodes) : k_(k), order_(order), half_nodes_(half_nodes) {
  if (order < 0) throw ArgumentError("truncation order must be nonnegative");
  if (half_nodes < order + 1) throw ArgumentError("too few quadrature nodes for the truncation order");
  const int dim = 2 * order + 1;
  matrix_ = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = -order; n <= order; ++n)
    if (n != 0) matrix_(n + order, n + order) = 0.5 / std::abs(n);
  if (k == cplx(0.0)) return;

  const int p = 2 * half_nodes;
  const double w = kTwoPi / p;
  std::vector<cplx> pts(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) pts[static_cast<std::size_t>(i)] = std::polar(1.0, w * i);
  Eigen::MatrixXd h(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      h(i, j) = faddeev_smooth_part(k, pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]);
  Eigen::MatrixXcd phi(p, dim);
  const double s = 1.0 / std::sqrt(kTwoPi);
  for (int i = 0; i < p; ++i)
    for (int n = -order; n <= order; ++n) phi(i, n + order) = std::polar(s, w * i * n);
  matrix_ += (w * w) * (phi.adjoint() * h.cast<cplx>() * phi);
}

BoundaryField SingleLayer::apply(const BoundaryField& density) const {
  const BoundaryField f = density.resized(order_);
  const Eigen::Map<const Eigen::VectorXcd> v(f.coeffs().data(), f.size());
  const Eigen::VectorXcd out = matrix_ * v;
  return BoundaryField(std::vector<cplx>(out.data(), out.data() + out.size()));
}

double SingleLayer::mapping_norm(double s) const {
  const int dim = 2 * order_ + 1;
  Eigen::MatrixXcd m = matrix_;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      m(a, b) *= std::pow(1.0 + std::abs(a - order_), s + 1.0) * std::pow(1.0 + std::abs(b - order_), -s);
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

BoundaryField single_layer_apply(cplx k, const BoundaryField& density, int half_nodes) {
  return SingleLayer(k, density.order(), std::max(half_nodes, density.order() + 1)).apply(density);
}

cplx single_layer_potential(cplx k, const BoundaryField& density, cplx x, int half_nodes) {
  const int p = 2 * half_nodes;
  const double w = kTwoPi / p;
  cplx acc = 0.0;
  for (int j = 0; j < p; ++j) {
    const double t = w * j;
    acc += faddeev_G(k, x - std::polar(1.0, t)) * density.evaluate(t);
  }
  return acc * w;
}

std::array<cplx, 2> single_layer_potential_gradient(cplx k, const BoundaryField& density, cplx x,
                                                    int half_nodes) {
  const int p = 2 * half_nodes;
  const double w = kTwoPi / p;
  cplx gx = 0.0, gy = 0.0;
  for (int j = 0; j < p; ++j) {
    const double t = w * j;
    const auto g = faddeev_gradient(k, x - std::polar(1.0, t));
    const cplx f = density.evaluate(t);
    gx += g[0] * f;
    gy += g[1] * f;
  }
  return {gx * w, gy * w};
}

double single_layer_jump_residual(cplx k, const BoundaryField& density, std::span<const double> angles,
                                  double delta, int half_nodes) {
  if (!(delta > 0.0 && delta < 0.5)) throw ArgumentError("jump offset must lie in (0, 0.5)");
  double worst = 0.0;
  for (double theta : angles) {
    const cplx dir = std::polar(1.0, theta);
    auto radial = [&](double r) {
      const auto g = single_layer_potential_gradient(k, density, r * dir, half_nodes);
      return g[0] * dir.real() + g[1] * dir.imag();
    };
    const cplx inner = 2.0 * radial(1.0 - 0.5 * delta) - radial(1.0 - delta);
    const cplx outer = 2.0 * radial(1.0 + 0.5 * delta) - radial(1.0 + delta);
    worst = std::max(worst, std::abs(inner - outer - density.evaluate(theta)));
  }
  return worst;
}

}  // namespace nachman
