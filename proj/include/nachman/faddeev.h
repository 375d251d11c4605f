#pragma once

// Faddeev's Green's function G_k(x) = e^{ikx} g_k(x) for -Laplacian, points
// of the plane written as complex numbers x = x1 + i x2 and kx the complex
// product. Evaluated in closed form,
//   G_k(x) = Re E1(-ikx) / (2 pi),
// so that G_k - G_0 = (Re Ein(-ikx) - gamma - log|k|) / (2 pi) is smooth,
// G_0(x) = -log|x| / (2 pi).

#include <array>
#include <span>

#include <Eigen/Dense>

#include "nachman/boundary_field.h"

namespace nachman {

// -log|x| / (2 pi). Throws DomainError at x = 0.
double log_kernel(cplx x);

// G_k(x). k = 0 gives log_kernel. Throws DomainError at x = 0.
double faddeev_G(cplx k, cplx x);

// g_k(x) = e^{-ikx} G_k(x). Throws DomainError at x = 0.
cplx faddeev_g(cplx k, cplx x);

// G_k(x) - G_0(x), defined for all x (zero when k = 0).
double faddeev_smooth_part(cplx k, cplx x);

// (d/dx1, d/dx2) G_k(x); the complex derivative of the holomorphic
// function whose real part is 2 pi G_k is -e^{ikx}/x.
std::array<double, 2> faddeev_gradient(cplx k, cplx x);

// Single layer S_k f(x) = int_{|y|=1} G_k(x - y) f(y) ds(y), restricted to the
// circle and represented on phi_n, |n| <= order. The log part acts as the
// multiplier 1/(2|n|) (0 for n = 0); the smooth remainder is integrated by
// the trapezoidal rule on 2M nodes in each variable.
class SingleLayer {
 public:
  SingleLayer(cplx k, int order, int half_nodes = 128);

  cplx k() const { return k_; }
  int order() const { return order_; }
  int half_nodes() const { return half_nodes_; }
  // (S f)_m = sum_n matrix(m + N, n + N) f_n
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  BoundaryField apply(const BoundaryField& density) const;

  // Spectral norm of W^{s+1} S W^{-s}, W = diag(1+|n|): the truncated
  // H^s -> H^{s+1} operator norm.
  double mapping_norm(double s) const;

 private:
  cplx k_;
  int order_;
  int half_nodes_;
  Eigen::MatrixXcd matrix_;
};

BoundaryField single_layer_apply(cplx k, const BoundaryField& density, int half_nodes = 128);

// Potential int G_k(x - y) f(y) ds(y) and its gradient at an off-circle
// point x, by the trapezoidal rule on 2M nodes (accurate at distance of a
// few node spacings from the circle).
cplx single_layer_potential(cplx k, const BoundaryField& density, cplx x, int half_nodes = 512);
std::array<cplx, 2> single_layer_potential_gradient(cplx k, const BoundaryField& density, cplx x,
                                                      int half_nodes = 512);

// Max over the given angles of |(d_r u(1-) - d_r u(1+)) - f(theta)| for the
// single-layer potential u of f. Each one-sided limit is
// extrapolated from the radii 1 -+ delta and 1 -+ delta/2.
double single_layer_jump_residual(cplx k, const BoundaryField& density, std::span<const double> angles,
                                  double delta = 0.1, int half_nodes = 512);

}  // namespace nachman
