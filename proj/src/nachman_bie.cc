#include "nachman/nachman_bie.h"

#include <cmath>

#include "nachman/errors.h"
#include "nachman/forward_solver.h"

namespace nachman {
namespace {

BoundaryField power_series_trace(cplx w, int order, int sign) {
  BoundaryField f(order);
  cplx term = std::sqrt(kTwoPi);
  for (int j = 0; j <= order; ++j) {
    f[sign * j] = term;
    term *= w / static_cast<double>(j + 1);
  }
  return f;
}

}  // namespace

BoundaryField exp_trace(cplx k, int order) {
  if (order < 0) throw ArgumentError("truncation order must be nonnegative");
  return power_series_trace(cplx(0.0, 1.0) * k, order, 1);
}

BoundaryField conj_exp_trace(cplx k, int order) {
  if (order < 0) throw ArgumentError("truncation order must be nonnegative");
  return power_series_trace(cplx(0.0, 1.0) * std::conj(k), order, -1);
}

double exp_trace_tail(cplx k, int order) {
  return std::sqrt(kTwoPi) * std::exp((order + 1) * std::log(std::abs(k)) - std::lgamma(order + 2.0));
}

CgoTrace solve_bie(cplx k, const DnMatrix& a, const SingleLayer& sk) {
  if (a.tag != DnTag::kDifference) throw ArgumentError("boundary integral equation needs a DN difference");
  if (sk.order() != a.order) throw ArgumentError("single layer and DN matrix orders differ");
  if (std::abs(sk.k() - k) > 1e-14 * (1.0 + std::abs(k))) throw ArgumentError("single layer built at another k");
  const int n = a.order, dim = 2 * n + 1;
  Eigen::VectorXd w(dim);
  for (int i = 0; i < dim; ++i) w(i) = std::sqrt(1.0 + std::abs(i - n));
  const Eigen::MatrixXcd system = Eigen::MatrixXcd::Identity(dim, dim) + sk.matrix() * a.entries;
  const Eigen::MatrixXcd weighted = w.asDiagonal() * system * w.cwiseInverse().asDiagonal();
  const BoundaryField rhs = exp_trace(k, n);
  const Eigen::Map<const Eigen::VectorXcd> b(rhs.coeffs().data(), dim);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(weighted, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  CgoTrace out{k, BoundaryField(n)};
  out.condition = sv(dim - 1) > 0.0 ? sv(0) / sv(dim - 1) : std::numeric_limits<double>::infinity();
  out.near_singular = !(out.condition <= 1e8);
  out.truncation_warning = exp_trace_tail(k, n) > 1e-12;
  const Eigen::VectorXcd y = svd.solve(w.asDiagonal() * b);
  const Eigen::VectorXcd g = w.cwiseInverse().asDiagonal() * y;
  for (int i = 0; i < dim; ++i) out.g[i - n] = g(i);
  out.residual = (w.asDiagonal() * (system * g - b)).norm();
  return out;
}

cplx scattering_transform_boundary(cplx k, const DnMatrix& a, const CgoTrace& g) {
  if (a.tag != DnTag::kDifference) throw ArgumentError("scattering transform needs a DN difference");
  return bilinear_pairing(conj_exp_trace(k, a.order), a.apply(g.g));
}

cplx boundary_transform_at(cplx k, const DnMatrix& a, int half_nodes) {
  const SingleLayer sk(k, a.order, half_nodes);
  return scattering_transform_boundary(k, a, solve_bie(k, a, sk));
}

ScatteringTransform boundary_transform(const DnMatrix& a, const PolarGrid& grid, double cutoff, int half_nodes) {
  return sample_transform(grid, cutoff, TransformSource::kBoundary,
                          [&](cplx k) { return boundary_transform_at(k, a, half_nodes); });
}

ScatteringTransform boundary_transform(const Conductivity& sigma, const PolarGrid& grid, double cutoff,
                                       const BoundaryPipelineOptions& options) {
  const FemMesh mesh = mesh_for(sigma, options.boundary_nodes);
  const DnMatrix a = dn_difference(sigma, options.order, mesh);
  return boundary_transform(a, grid, cutoff, options.half_nodes);
}

}  // namespace nachman
