#pragma once

// Finite-element forward problem div(sigma grad u) = 0 on the unit disc and
// synthesis of Dirichlet-to-Neumann matrices from the energy form
// <g, Lambda_sigma f> = int sigma grad u . grad v (never from boundary
// differentiation of u).

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Sparse>

#include "nachman/boundary_field.h"
#include "nachman/conductivity.h"
#include "nachman/disc_mesh.h"
#include "nachman/dn_matrix.h"

namespace nachman {

// Sparse stiffness matrix of sigma on a mesh, with a factorization of the
// interior block. Immutable after construction; solves are const.
class DirichletSolver {
 public:
  DirichletSolver(const FemMesh& mesh, const Conductivity& sigma);
  ~DirichletSolver();
  DirichletSolver(DirichletSolver&&) noexcept;
  DirichletSolver& operator=(DirichletSolver&&) noexcept;

  const FemMesh& mesh() const { return *mesh_; }
  const Eigen::SparseMatrix<double>& stiffness() const { return stiffness_; }

  // Nodal solution for boundary values given at mesh.boundary_nodes.
  Eigen::VectorXd solve(const Eigen::VectorXd& boundary_values) const;
  Eigen::VectorXcd solve(const BoundaryField& f) const;

  // Bilinear energy u^T K v.
  cplx energy(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const;

 private:
  const FemMesh* mesh_;
  Eigen::SparseMatrix<double> stiffness_;
  Eigen::SparseMatrix<double> interior_boundary_;
  std::vector<int> interior_index_;  // node -> interior unknown or -1
  std::vector<int> interior_nodes_;
  struct Factor;
  std::unique_ptr<Factor> factor_;
};

// Stiffness matrix int w grad phi_a . grad phi_b for a coefficient w.
Eigen::SparseMatrix<double> assemble_stiffness(const FemMesh& mesh, const Conductivity& sigma);

// Nodal interpolant of a function of (x, y).
Eigen::VectorXcd interpolate(const FemMesh& mesh, const std::function<cplx(double, double)>& f);

// Harmonic extension of f sampled at the mesh nodes.
Eigen::VectorXcd harmonic_extension_nodal(const FemMesh& mesh, const BoundaryField& f);

// (int |u_h - exact|^2)^{1/2} by element quadrature.
double l2_error(const FemMesh& mesh, const Eigen::VectorXcd& u, const std::function<cplx(double, double)>& exact);

// (int_{|x| < radius} |grad u|^2)^{1/2}, over elements whose centroid lies inside.
double gradient_norm_in_disc(const FemMesh& mesh, const Eigen::VectorXcd& u, double radius);

// Finite-element solution of the Dirichlet problem with data f.
Eigen::VectorXcd solve_dirichlet(const Conductivity& sigma, const BoundaryField& f, const FemMesh& mesh);

// Lambda_sigma on |n| <= order. Throws ResolutionError if the mesh has fewer
// than 8 boundary vertices per wavelength of the highest mode.
DnMatrix assemble_dn_map(const Conductivity& sigma, int order, const FemMesh& mesh);
DnMatrix assemble_dn_map(const DirichletSolver& solver, int order);

// Lambda_sigma - Lambda_1, both synthesized on the same mesh so that the
// discretization error of the common exterior region cancels.
DnMatrix dn_difference(const Conductivity& sigma, int order, const FemMesh& mesh);

// int sigma grad u_f . grad v_g (bilinear), v_g the harmonic extension of g.
cplx alessandrini_pairing(const BoundaryField& g, const BoundaryField& f, const Conductivity& sigma,
                          const FemMesh& mesh);

// Exact eigenvalue of Lambda_sigma on phi_n for concentric piecewise-constant
// layers (outermost value 1), by transfer of c r^|n| + d r^-|n| across layers.
double radial_dn_eigenvalue(const PiecewiseRadial& profile, int n);

struct FemToleranceEstimate {
  double coarse = 0.0;  // estimated max relative entry error, |n| <= check_order
  double fine = 0.0;
  int check_order = 0;
};

// Richardson-type estimate from two mesh levels (boundary_nodes and twice
// that), assuming O(h^4) convergence of the energy entries.
FemToleranceEstimate estimate_fem_tolerance(const Conductivity& sigma, int order, int boundary_nodes,
                                            int check_order = 8);

}  // namespace nachman
