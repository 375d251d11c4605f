#pragma once

// Quadratic Lagrange triangle on the reference element (0,0),(1,0),(0,1).

#include <array>

#include "nachman/disc_mesh.h"

namespace nachman::p2 {

struct QuadPoint {
  double xi, eta, weight;  // weights sum to 1/2 (reference area)
};

// Degree-5 seven-point rule.
inline const std::array<QuadPoint, 7>& quadrature() {
  static const std::array<QuadPoint, 7> rule = [] {
    const double a1 = 0.059715871789770, b1 = 0.470142064105115, w1 = 0.132394152788506;
    const double a2 = 0.797426985353087, b2 = 0.101286507323456, w2 = 0.125939180544827;
    return std::array<QuadPoint, 7>{{{1.0 / 3.0, 1.0 / 3.0, 0.5 * 0.225},
                                     {b1, b1, 0.5 * w1},
                                     {a1, b1, 0.5 * w1},
                                     {b1, a1, 0.5 * w1},
                                     {b2, b2, 0.5 * w2},
                                     {a2, b2, 0.5 * w2},
                                     {b2, a2, 0.5 * w2}}};
  }();
  return rule;
}

inline std::array<double, 6> shape(double xi, double eta) {
  const double l0 = 1.0 - xi - eta, l1 = xi, l2 = eta;
  return {l0 * (2 * l0 - 1), l1 * (2 * l1 - 1), l2 * (2 * l2 - 1), 4 * l0 * l1, 4 * l1 * l2, 4 * l2 * l0};
}

// Reference gradients (d/dxi, d/deta) of the six shape functions.
inline std::array<std::array<double, 2>, 6> shape_gradients(double xi, double eta) {
  const double l0 = 1.0 - xi - eta, l1 = xi, l2 = eta;
  return {{{-(4 * l0 - 1), -(4 * l0 - 1)},
           {4 * l1 - 1, 0.0},
           {0.0, 4 * l2 - 1},
           {4 * (l0 - l1), -4 * l1},
           {4 * l2, 4 * l1},
           {-4 * l2, 4 * (l0 - l2)}}};
}

// Physical position, Jacobian determinant and physical shape gradients at a
// reference point of element `tri`.
struct MappedPoint {
  double x, y, det;
  std::array<std::array<double, 2>, 6> grad;
};

inline MappedPoint map_point(const FemMesh& mesh, const std::array<int, 6>& tri, double xi, double eta) {
  const auto n = shape(xi, eta);
  const auto g = shape_gradients(xi, eta);
  double x = 0, y = 0, j00 = 0, j01 = 0, j10 = 0, j11 = 0;
  for (int a = 0; a < 6; ++a) {
    const Point2& p = mesh.nodes[static_cast<std::size_t>(tri[static_cast<std::size_t>(a)])];
    x += n[a] * p.x;
    y += n[a] * p.y;
    j00 += p.x * g[a][0];
    j01 += p.x * g[a][1];
    j10 += p.y * g[a][0];
    j11 += p.y * g[a][1];
  }
  MappedPoint out{x, y, j00 * j11 - j01 * j10, {}};
  const double inv = 1.0 / out.det;
  for (int a = 0; a < 6; ++a) {
    // grad_phys = J^{-T} grad_ref
    out.grad[a][0] = (j11 * g[a][0] - j10 * g[a][1]) * inv;
    out.grad[a][1] = (-j01 * g[a][0] + j00 * g[a][1]) * inv;
  }
  return out;
}

}  // namespace nachman::p2
