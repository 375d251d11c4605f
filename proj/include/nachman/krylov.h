#pragma once

// Restarted GMRES for matrix-free linear operators, real or complex.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "nachman/errors.h"

namespace nachman {

struct GmresOptions {
  double tolerance = 1e-8;  // on ||b - A x|| / ||b||
  int restart = 60;
  int max_iterations = 600;
};

struct GmresResult {
  int iterations = 0;
  double relative_residual = 0.0;
};

// Solves A x = b starting from x; throws SolverError when the tolerance is
// not reached within max_iterations.
template <typename Scalar, typename Op>
GmresResult gmres(Op&& apply, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b,
                  Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x, const GmresOptions& opt = {}) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using std::abs;
  using Eigen::numext::conj;
  using std::sqrt;
  const double bnorm = b.norm();
  GmresResult result;
  if (bnorm == 0.0) {
    x.setZero(b.size());
    return result;
  }
  if (x.size() != b.size()) x.setZero(b.size());
  const int m = opt.restart;
  std::vector<Vec> v(static_cast<std::size_t>(m + 1));
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> h(m + 1, m);
  std::vector<Scalar> cs(static_cast<std::size_t>(m)), sn(static_cast<std::size_t>(m));
  Vec g(m + 1);
  while (true) {
    Vec r = b - apply(x);
    double beta = r.norm();
    result.relative_residual = beta / bnorm;
    if (result.relative_residual <= opt.tolerance) return result;
    if (result.iterations >= opt.max_iterations)
      throw SolverError("GMRES did not converge", result.relative_residual);
    v[0] = r / beta;
    g.setZero();
    g(0) = beta;
    h.setZero();
    int j = 0;
    for (; j < m && result.iterations < opt.max_iterations; ++j) {
      ++result.iterations;
      Vec w = apply(v[static_cast<std::size_t>(j)]);
      for (int i = 0; i <= j; ++i) {
        h(i, j) = v[static_cast<std::size_t>(i)].dot(w);
        w -= h(i, j) * v[static_cast<std::size_t>(i)];
      }
      const double wn = w.norm();
      h(j + 1, j) = wn;
      for (int i = 0; i < j; ++i) {
        const Scalar a = h(i, j), c = h(i + 1, j);
        h(i, j) = conj(cs[static_cast<std::size_t>(i)]) * a + conj(sn[static_cast<std::size_t>(i)]) * c;
        h(i + 1, j) = -sn[static_cast<std::size_t>(i)] * a + cs[static_cast<std::size_t>(i)] * c;
      }
      const Scalar a = h(j, j), c = h(j + 1, j);
      const double den = sqrt(std::norm(a) + std::norm(c));
      if (den == 0.0) {
        cs[static_cast<std::size_t>(j)] = 1.0;
        sn[static_cast<std::size_t>(j)] = 0.0;
      } else {
        cs[static_cast<std::size_t>(j)] = a / den;
        sn[static_cast<std::size_t>(j)] = c / den;
      }
      h(j, j) = den;
      h(j + 1, j) = 0.0;
      g(j + 1) = -sn[static_cast<std::size_t>(j)] * g(j);
      g(j) = conj(cs[static_cast<std::size_t>(j)]) * g(j);
      result.relative_residual = abs(g(j + 1)) / bnorm;
      if (wn == 0.0 || result.relative_residual <= opt.tolerance) {
        ++j;
        break;
      }
      v[static_cast<std::size_t>(j + 1)] = w / wn;
    }
    const Vec y = h.topLeftCorner(j, j).template triangularView<Eigen::Upper>().solve(g.head(j));
    for (int i = 0; i < j; ++i) x += y(i) * v[static_cast<std::size_t>(i)];
  }
}

}  // namespace nachman
