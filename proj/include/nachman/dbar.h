#pragma once

// D-bar reconstruction: for each x, solve
//   m(x, k) = 1 + C[ T(k) e_{-k}(x) conj(m(x, .)) ](k),  T = t 1_{|k|<=R} / (4 pi conj k),
// with C the solid Cauchy transform in k, and set sigma(x) = m(x, 0)^2.

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "nachman/conductivity.h"
#include "nachman/krylov.h"
#include "nachman/periodic_grid.h"
#include "nachman/scattering_transform.h"

namespace nachman {

struct DbarOptions {
  double grid_factor = 1.05;  // K = grid_factor * R
  int points = 0;             // per side of [-2K, 2K]^2; 0 picks h <= 1/16
  GmresOptions gmres{1e-10, 60, 600};
};

// k-grid for a cutoff R: the periodic box [-2K, 2K]^2.
PeriodicGrid dbar_grid(double cutoff, const DbarOptions& options = {});

// Scattering data prepared on a k-grid: T(k) at the nodes with |k| <= R.
class DbarProblem {
 public:
  DbarProblem(const std::function<cplx(cplx)>& t, double cutoff, const DbarOptions& options = {});

  const PeriodicGrid& grid() const { return grid_; }
  double cutoff() const { return cutoff_; }

  struct Solution {
    Field m;  // on the k-grid, valid for |k| <= cutoff
    cplx m0;  // m(x, 0)
    int iterations = 0;
    double residual = 0.0;
  };
  Solution solve(cplx x) const;

 private:
  PeriodicGrid grid_;
  double cutoff_;
  GmresOptions gmres_;
  Convolution cauchy_;
  std::vector<std::size_t> support_;
  std::vector<cplx> weight_;  // T at support nodes
  std::size_t origin_ = 0;
};

DbarProblem::Solution solve_dbar(cplx x, const ScatteringTransform& t, const DbarOptions& options = {});

struct Reconstruction {
  std::vector<cplx> points;
  std::vector<double> sigma;
  std::vector<double> imag_m;  // Im m(x, 0)
  double cutoff = 0.0;
  int k_points = 0;
  double max_imag = 0.0;
  int positivity_violations = 0;
  std::optional<double> relative_l2_error;
};

// Sample points of an n x n grid over [-1, 1]^2 that lie in the closed disc.
std::vector<cplx> disc_sample_points(int n);

Reconstruction reconstruct_sigma(const std::function<cplx(cplx)>& t, double cutoff, const std::vector<cplx>& xs,
                                 const DbarOptions& options = {}, const Conductivity* truth = nullptr);
Reconstruction reconstruct_sigma(const ScatteringTransform& t, const std::vector<cplx>& xs,
                                 const DbarOptions& options = {}, const Conductivity* truth = nullptr);

// sqrt(sum |a - b|^2 / sum |b|^2) over paired samples.
double relative_l2(const std::vector<double>& a, const std::vector<double>& b);

void write_csv(std::ostream& os, const Reconstruction& r);
nlohmann::json metrics_json(const Reconstruction& r);

}  // namespace nachman
