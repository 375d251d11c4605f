#include "nachman/forward_solver.h"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseCholesky>

#include "nachman/errors.h"
#include "p2_element.h"

namespace nachman {

struct DirichletSolver::Factor {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

Eigen::SparseMatrix<double> assemble_stiffness(const FemMesh& mesh, const Conductivity& sigma) {
  const bool cellwise = sigma.kind() == ConductivityKind::kGrid;
  const bool unit = sigma.is_unit();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.triangles.size() * 36);
  for (const auto& tri : mesh.triangles) {
    double ke[6][6] = {};
    double cell_value = 1.0;
    if (cellwise) {
      const auto c = p2::map_point(mesh, tri, 1.0 / 3.0, 1.0 / 3.0);
      cell_value = sigma(c.x, c.y);
    }
    for (const auto& q : p2::quadrature()) {
      const auto mp = p2::map_point(mesh, tri, q.xi, q.eta);
      if (mp.det <= 0.0) throw ArgumentError("inverted element in mesh");
      const double coef = unit ? 1.0 : (cellwise ? cell_value : sigma(mp.x, mp.y));
      const double w = q.weight * mp.det * coef;
      for (int a = 0; a < 6; ++a)
        for (int b = a; b < 6; ++b)
          ke[a][b] += w * (mp.grad[a][0] * mp.grad[b][0] + mp.grad[a][1] * mp.grad[b][1]);
    }
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        trip.emplace_back(tri[static_cast<std::size_t>(a)], tri[static_cast<std::size_t>(b)], a <= b ? ke[a][b] : ke[b][a]);
  }
  const auto n = static_cast<Eigen::Index>(mesh.nodes.size());
  Eigen::SparseMatrix<double> k(n, n);
  k.setFromTriplets(trip.begin(), trip.end());
  return k;
}

DirichletSolver::DirichletSolver(const FemMesh& mesh, const Conductivity& sigma)
    : mesh_(&mesh), stiffness_(assemble_stiffness(mesh, sigma)), factor_(std::make_unique<Factor>()) {
  const std::size_t n = mesh.nodes.size();
  interior_index_.assign(n, 0);
  for (int b : mesh.boundary_nodes) interior_index_[static_cast<std::size_t>(b)] = -1;
  std::vector<int> boundary_pos(n, -1);
  for (std::size_t i = 0; i < mesh.boundary_nodes.size(); ++i)
    boundary_pos[static_cast<std::size_t>(mesh.boundary_nodes[i])] = static_cast<int>(i);
  int count = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (interior_index_[i] >= 0) {
      interior_index_[i] = count++;
      interior_nodes_.push_back(static_cast<int>(i));
    }
  std::vector<Eigen::Triplet<double>> ii, ib;
  for (int col = 0; col < stiffness_.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(stiffness_, col); it; ++it) {
      const int r = interior_index_[static_cast<std::size_t>(it.row())];
      if (r < 0) continue;
      const int c = interior_index_[static_cast<std::size_t>(it.col())];
      if (c >= 0)
        ii.emplace_back(r, c, it.value());
      else
        ib.emplace_back(r, boundary_pos[static_cast<std::size_t>(it.col())], it.value());
    }
  Eigen::SparseMatrix<double> kii(count, count);
  kii.setFromTriplets(ii.begin(), ii.end());
  interior_boundary_.resize(count, static_cast<Eigen::Index>(mesh.boundary_nodes.size()));
  interior_boundary_.setFromTriplets(ib.begin(), ib.end());
  factor_->ldlt.compute(kii);
  if (factor_->ldlt.info() != Eigen::Success) throw SolverError("stiffness factorization failed", 0.0);
}

DirichletSolver::~DirichletSolver() = default;
DirichletSolver::DirichletSolver(DirichletSolver&&) noexcept = default;
DirichletSolver& DirichletSolver::operator=(DirichletSolver&&) noexcept = default;

Eigen::VectorXd DirichletSolver::solve(const Eigen::VectorXd& boundary_values) const {
  if (boundary_values.size() != static_cast<Eigen::Index>(mesh_->boundary_nodes.size()))
    throw ArgumentError("boundary data size does not match the mesh");
  const Eigen::VectorXd rhs = -(interior_boundary_ * boundary_values);
  const Eigen::VectorXd ui = factor_->ldlt.solve(rhs);
  Eigen::VectorXd u(static_cast<Eigen::Index>(mesh_->nodes.size()));
  for (std::size_t i = 0; i < interior_nodes_.size(); ++i) u(interior_nodes_[i]) = ui(static_cast<Eigen::Index>(i));
  for (std::size_t i = 0; i < mesh_->boundary_nodes.size(); ++i)
    u(mesh_->boundary_nodes[i]) = boundary_values(static_cast<Eigen::Index>(i));
  return u;
}

Eigen::VectorXcd DirichletSolver::solve(const BoundaryField& f) const {
  const auto nb = static_cast<Eigen::Index>(mesh_->boundary_nodes.size());
  Eigen::VectorXd re(nb), im(nb);
  for (Eigen::Index i = 0; i < nb; ++i) {
    const cplx v = f.evaluate(mesh_->boundary_angles[static_cast<std::size_t>(i)]);
    re(i) = v.real();
    im(i) = v.imag();
  }
  Eigen::VectorXcd u(static_cast<Eigen::Index>(mesh_->nodes.size()));
  u.real() = solve(re);
  u.imag() = solve(im);
  return u;
}

cplx DirichletSolver::energy(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const {
  const Eigen::VectorXcd kv = stiffness_ * v;
  return (u.transpose() * kv)(0);
}

Eigen::VectorXcd interpolate(const FemMesh& mesh, const std::function<cplx(double, double)>& f) {
  Eigen::VectorXcd u(static_cast<Eigen::Index>(mesh.nodes.size()));
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) u(static_cast<Eigen::Index>(i)) = f(mesh.nodes[i].x, mesh.nodes[i].y);
  return u;
}

Eigen::VectorXcd harmonic_extension_nodal(const FemMesh& mesh, const BoundaryField& f) {
  std::vector<DiscPoint> pts;
  pts.reserve(mesh.nodes.size());
  for (const auto& p : mesh.nodes) pts.push_back({std::min(1.0, std::hypot(p.x, p.y)), std::atan2(p.y, p.x)});
  const auto vals = harmonic_extend(f, pts);
  return Eigen::Map<const Eigen::VectorXcd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

double l2_error(const FemMesh& mesh, const Eigen::VectorXcd& u, const std::function<cplx(double, double)>& exact) {
  double acc = 0.0;
  for (const auto& tri : mesh.triangles)
    for (const auto& q : p2::quadrature()) {
      const auto mp = p2::map_point(mesh, tri, q.xi, q.eta);
      const auto n = p2::shape(q.xi, q.eta);
      cplx uh = 0.0;
      for (int a = 0; a < 6; ++a) uh += n[a] * u(tri[static_cast<std::size_t>(a)]);
      acc += q.weight * mp.det * std::norm(uh - exact(mp.x, mp.y));
    }
  return std::sqrt(acc);
}

double gradient_norm_in_disc(const FemMesh& mesh, const Eigen::VectorXcd& u, double radius) {
  double acc = 0.0;
  for (const auto& tri : mesh.triangles) {
    const auto c = p2::map_point(mesh, tri, 1.0 / 3.0, 1.0 / 3.0);
    if (std::hypot(c.x, c.y) >= radius) continue;
    for (const auto& q : p2::quadrature()) {
      const auto mp = p2::map_point(mesh, tri, q.xi, q.eta);
      cplx gx = 0.0, gy = 0.0;
      for (int a = 0; a < 6; ++a) {
        gx += mp.grad[a][0] * u(tri[static_cast<std::size_t>(a)]);
        gy += mp.grad[a][1] * u(tri[static_cast<std::size_t>(a)]);
      }
      acc += q.weight * mp.det * (std::norm(gx) + std::norm(gy));
    }
  }
  return std::sqrt(acc);
}

Eigen::VectorXcd solve_dirichlet(const Conductivity& sigma, const BoundaryField& f, const FemMesh& mesh) {
  return DirichletSolver(mesh, sigma).solve(f);
}

DnMatrix assemble_dn_map(const DirichletSolver& solver, int order) {
  const FemMesh& mesh = solver.mesh();
  if (order < 0) throw ArgumentError("truncation order must be nonnegative");
  if (order > 0 && mesh.boundary_vertex_count < 8 * order)
    throw ResolutionError("mesh has " + std::to_string(mesh.boundary_vertex_count) +
                          " boundary vertices; modes up to |n| = " + std::to_string(order) + " need at least " +
                          std::to_string(8 * order));
  const int dim = 2 * order + 1;
  const auto nb = static_cast<Eigen::Index>(mesh.boundary_nodes.size());
  // Real basis: cos(j t), j = 0..N, then sin(j t), j = 1..N.
  Eigen::MatrixXd u(static_cast<Eigen::Index>(mesh.nodes.size()), dim);
  for (int a = 0; a < dim; ++a) {
    Eigen::VectorXd data(nb);
    for (Eigen::Index i = 0; i < nb; ++i) {
      const double t = mesh.boundary_angles[static_cast<std::size_t>(i)];
      data(i) = a <= order ? std::cos(a * t) : std::sin((a - order) * t);
    }
    u.col(a) = solver.solve(data);
  }
  const Eigen::MatrixXd ku = solver.stiffness() * u;
  Eigen::MatrixXd energy = u.transpose() * ku;
  energy = 0.5 * (energy + energy.transpose()).eval();

  // phi_n = (cos n t + i sgn(n) sin |n| t) / sqrt(2 pi)
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(dim, dim);
  const double s = 1.0 / std::sqrt(kTwoPi);
  for (int n = -order; n <= order; ++n) {
    const int m = std::abs(n);
    t(n + order, m) = s;
    if (m > 0) t(n + order, order + m) = cplx(0.0, n > 0 ? s : -s);
  }
  Eigen::MatrixXcd l = t.conjugate() * energy.cast<cplx>() * t.transpose();
  return DnMatrix(std::move(l), order, DnTag::kFullMap);
}

DnMatrix assemble_dn_map(const Conductivity& sigma, int order, const FemMesh& mesh) {
  return assemble_dn_map(DirichletSolver(mesh, sigma), order);
}

DnMatrix dn_difference(const Conductivity& sigma, int order, const FemMesh& mesh) {
  const DnMatrix full = assemble_dn_map(sigma, order, mesh);
  const DnMatrix ref = assemble_dn_map(Conductivity::unit(), order, mesh);
  return full - ref;
}

cplx alessandrini_pairing(const BoundaryField& g, const BoundaryField& f, const Conductivity& sigma,
                          const FemMesh& mesh) {
  const DirichletSolver solver(mesh, sigma);
  const Eigen::VectorXcd u = solver.solve(f);
  const Eigen::VectorXcd v = harmonic_extension_nodal(mesh, g);
  return solver.energy(v, u);
}

double radial_dn_eigenvalue(const PiecewiseRadial& profile, int n) {
  if (profile.ramp_width != 0.0) throw ArgumentError("radial oracle needs sharp layers");
  if (profile.radii.size() != profile.values.size()) throw ArgumentError("layer radii and values differ in length");
  const int m = std::abs(n);
  if (m == 0) return 0.0;
  // u = c r^m + d r^-m in each layer; innermost d = 0.
  double c = 1.0, d = 0.0;
  for (std::size_t i = 0; i < profile.radii.size(); ++i) {
    const double rho = profile.radii[i];
    const double inner = profile.values[i];
    const double outer = i + 1 < profile.radii.size() ? profile.values[i + 1] : 1.0;
    const double rp = std::pow(rho, m);
    const double u = c * rp + d / rp;
    // flux sigma r u_r / m, continuous across the interface
    const double flux = inner * (c * rp - d / rp);
    const double g = flux / outer;
    c = 0.5 * (u + g) / rp;
    d = 0.5 * (u - g) * rp;
  }
  return m * (c - d) / (c + d);
}

FemToleranceEstimate estimate_fem_tolerance(const Conductivity& sigma, int order, int boundary_nodes,
                                            int check_order) {
  const int n = std::min(order, check_order);
  const FemMesh coarse_mesh = mesh_for(sigma, boundary_nodes);
  const FemMesh fine_mesh = mesh_for(sigma, 2 * boundary_nodes);
  const DnMatrix coarse = assemble_dn_map(sigma, order, coarse_mesh);
  const DnMatrix fine = assemble_dn_map(sigma, order, fine_mesh);
  double worst = 0.0;
  for (int a = -n; a <= n; ++a)
    for (int b = -n; b <= n; ++b) {
      const double scale = std::max(1.0, std::abs(fine(a, a)));
      worst = std::max(worst, std::abs(coarse(a, b) - fine(a, b)) / scale);
    }
  // err_h ~ C h^4: err_coarse = |L_h - L_{h/2}| * 16/15, err_fine = err_coarse / 16
  return {worst * 16.0 / 15.0, worst / 15.0, n};
}

}  // namespace nachman
