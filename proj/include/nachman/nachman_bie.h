#pragma once

// Boundary integral equation (I + S_k (Lambda_sigma - Lambda_1)) g = e^{ikx}
// for the trace of the exponentially growing solution, and the boundary
// formula for the scattering transform.

#include "nachman/boundary_field.h"
#include "nachman/conductivity.h"
#include "nachman/dn_matrix.h"
#include "nachman/faddeev.h"
#include "nachman/scattering_transform.h"

namespace nachman {

// Coefficients of e^{ikx} on the circle: sqrt(2 pi) (ik)^j / j! on phi_j, j >= 0.
BoundaryField exp_trace(cplx k, int order);
// Coefficients of e^{i conj(k) conj(x)}: sqrt(2 pi) (i conj k)^j / j! on phi_{-j}.
BoundaryField conj_exp_trace(cplx k, int order);
// Size of the first omitted term, |k|^{N+1} / (N+1)!, times sqrt(2 pi).
double exp_trace_tail(cplx k, int order);

struct CgoTrace {
  cplx k;
  BoundaryField g;
  double condition = 1.0;        // 2-norm condition of the H^{1/2}-weighted system
  double residual = 0.0;         // H^{1/2} norm of (I + S_k A) g - e^{ikx}
  bool near_singular = false;    // condition > 1e8
  bool truncation_warning = false;  // exp_trace_tail > 1e-12
};

// Dense solve in the weighted coefficient space. A must be a difference
// matrix of the same order as S_k.
CgoTrace solve_bie(cplx k, const DnMatrix& a, const SingleLayer& sk);

// Bilinear pairing of conj_exp_trace(k) with A g.
cplx scattering_transform_boundary(cplx k, const DnMatrix& a, const CgoTrace& g);

struct BoundaryPipelineOptions {
  int order = 16;
  int boundary_nodes = 256;
  int half_nodes = 128;
};

// t(k) at a single k from a difference matrix (solve_bie + pairing).
cplx boundary_transform_at(cplx k, const DnMatrix& a, int half_nodes = 128);

// t on a polar grid from a phantom: one DN assembly, then the BIE at each k.
ScatteringTransform boundary_transform(const Conductivity& sigma, const PolarGrid& grid, double cutoff,
                                       const BoundaryPipelineOptions& options = {});
ScatteringTransform boundary_transform(const DnMatrix& a, const PolarGrid& grid, double cutoff,
                                       int half_nodes = 128);

}  // namespace nachman
