#pragma once

// Complex geometric optics solutions f = e^{ikz} M of the conjugate Beltrami
// equation dbar f = mu conj(d f) with real mu = (1 - sigma)/(1 + sigma), and
// the transform tau_mu. The unknown is nu = dbar M, so that M = 1 + C nu and
// d M = S nu with C, S the Cauchy and Beurling transforms:
//   nu = mu e_{-k} conj(ik (1 + C nu) + S nu).

#include <vector>

#include "nachman/conductivity.h"
#include "nachman/krylov.h"
#include "nachman/periodic_grid.h"
#include "nachman/scattering_transform.h"

namespace nachman {

struct BeltramiCoefficient {
  PeriodicGrid grid;
  std::vector<double> mu;
  double kappa = 0.0;           // max |mu|
  double support_radius = 0.0;  // mu = 0 for |x| > support_radius
};

// Pointwise mu = (1 - sigma)/(1 + sigma) on [-L, L]^2 (default 256^2, L = 2.1).
BeltramiCoefficient beltrami_coefficient(const Conductivity& sigma, int points = 256, double half_width = 2.1);
// Same grid, mu -> -mu (sigma -> 1/sigma).
BeltramiCoefficient negated(const BeltramiCoefficient& mu);

struct BeltramiCgo {
  PeriodicGrid grid;
  cplx k;
  Field m;        // M, valid for |x| <= valid_radius
  Field dbar_m;   // nu
  Field d_m;      // S nu
  double valid_radius = 0.0;
  int iterations = 0;
  double residual = 0.0;  // max |nu - mu e_{-k} conj(ik M + S nu)| on the grid
};

// Throws ArgumentError when kappa >= 1, SolverError when GMRES fails.
BeltramiCgo solve_beltrami_cgo(const BeltramiCoefficient& mu, cplx k, const GmresOptions& options = {});

struct TauSample {
  cplx tau;
  BeltramiCgo plus;
  BeltramiCgo minus;
};

// conj(tau(k)) = (1/2 pi) int dbar(M_mu - M_{-mu}) dx.
TauSample ap_transform(const BeltramiCoefficient& mu, cplx k, const GmresOptions& options = {});

// tau on a polar grid (source tag beltrami; values hold tau, not t).
ScatteringTransform tau_transform(const BeltramiCoefficient& mu, const PolarGrid& grid,
                                  const GmresOptions& options = {});

// The conductivity transform implied by tau: -4 pi i conj(k) tau(k).
cplx t_from_tau(cplx k, cplx tau);

// Largest |dbar f| - kappa |d f| over the grid (nonpositive when the
// distortion inequality holds).
double distortion_excess(const BeltramiCoefficient& mu, const BeltramiCgo& f);

// Radius beyond which |dbar(M_+ - M_-)| is below tol.
double tau_integrand_support(const TauSample& s, double tol = 1e-12);

// Relative weak residual max_phi |int sigma grad u . grad phi| / (||sigma grad u|| ||grad phi||)
// of u = Re(e^{ikz} M) over C-infinity bumps inside the unit disc.
double sigma_harmonic_weak_residual(const Conductivity& sigma, const BeltramiCgo& f);

// phi(x) = exp(1 - 1/(1 - |x - c|^2/r^2)) for |x - c| < r.
struct BumpTest {
  cplx center;
  double radius = 0.3;
  double value(cplx x) const;
  cplx dbar(cplx x) const;
};

struct ProbePairing {
  cplx with_phi;       // int phi (M - 1) dx
  cplx with_dbar_phi;  // int dbar(phi) (M - 1) dx
};

// Pairings for each coefficient of a sequence (outer) and test function (inner).
std::vector<std::vector<ProbePairing>> weak_convergence_probe(const std::vector<BeltramiCoefficient>& sequence,
                                                              cplx k, const std::vector<BumpTest>& tests,
                                                              const GmresOptions& options = {});

}  // namespace nachman
