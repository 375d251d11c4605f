#pragma once

// Exponentially growing solutions of (-Laplacian + q) psi = 0 with
// psi = e^{ikx} m and m -> 1, from m = 1 - g_k * (q m) on a periodic grid,
// and the scattering transform by direct quadrature.

#include "nachman/boundary_field.h"
#include "nachman/conductivity.h"
#include "nachman/krylov.h"
#include "nachman/periodic_grid.h"

namespace nachman {

struct Potential {
  PeriodicGrid grid;
  Field values;               // real q at the grid points
  double support_radius = 0;  // q = 0 for |x| > support_radius
};

// q = Laplacian(sqrt sigma)/sqrt sigma sampled on [-L, L]^2 (default 256^2 over
// [-1.5, 1.5]^2). Throws UnsupportedPhantomError for non-smooth sigma.
Potential sample_potential(const Conductivity& sigma, int points = 256, double half_width = 1.5);

struct CgoField {
  PeriodicGrid grid;
  cplx k;
  Field m;                    // valid for |x| <= valid_radius, NaN elsewhere
  double valid_radius = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

// Solves m = 1 - g_k * (q m). Throws SolverError if GMRES fails.
CgoField solve_lippmann_schwinger(cplx k, const Potential& q, const GmresOptions& options = {});

// int e_k(x) q(x) m(x, k) dx, e_k(x) = exp(i(kx + conj(k) conj(x))).
cplx scattering_transform_direct(cplx k, const Potential& q, const CgoField& m);

// Fourier coefficients of psi = e^{ikx} m on the unit circle, with m
// evaluated there by quadrature of the integral equation.
BoundaryField cgo_boundary_trace(const Potential& q, const CgoField& m, int order, int nodes = 256);

}  // namespace nachman
