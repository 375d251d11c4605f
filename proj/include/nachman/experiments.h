#pragma once

// Monotone smooth approximations of discontinuous phantoms, weighted operator
// norms of DN differences, and the convergence study t_n -> t.

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "nachman/conductivity.h"
#include "nachman/dn_matrix.h"

namespace nachman {

struct SequenceCheck {
  int grid_points = 0;
  long outside_violations = 0;   // sigma_n != 1 for |x| >= r1
  long lower_violations = 0;     // sigma_n < c
  long monotone_violations = 0;  // sigma_n > sigma_{n+1} or sigma_n > sigma
};

struct ApproximationSequence {
  Conductivity base;
  std::vector<int> n_values;
  std::vector<double> ramp_widths;
  std::vector<Conductivity> members;
  double r1 = 0.0;
  double lower_bound = 0.0;
  SequenceCheck check;
};

// C-infinity ramps of width min(1/n, w_max) replacing each jump, placed on
// the side where they stay below sigma; w_max keeps ramps disjoint and inside
// r1. Properties are checked on a points x points grid over [-1, 1]^2.
// Throws UnsupportedPhantomError for smooth or grid phantoms.
ApproximationSequence monotone_sequence(const Conductivity& base, const std::vector<int>& n_values = {2, 4, 8, 16, 32},
                                        int points = 512);

// ||W^{-1/2} A W^{-1/2}||_2 with W = diag(1 + |n|).
double operator_norm_h12(const DnMatrix& a);
double operator_norm_h12(const Eigen::MatrixXcd& a);

// (||(I - P_j) A||, ||A (I - P_j)||) in the same weighted norm.
std::array<double, 2> tail_bound(const DnMatrix& a, int j);

// Three-term splitting A_n - A = P_j D P_j + (I - P_j) D + P_j D (I - P_j).
struct SplittingCheck {
  double full = 0.0;
  double block = 0.0;
  double left_tail = 0.0;
  double right_tail = 0.0;
  double residual() const { return block + left_tail + right_tail - full; }
};
SplittingCheck splitting_check(const DnMatrix& an, const DnMatrix& a, int j);

struct StudyConfig {
  int order = 16;
  int boundary_nodes = 256;
  int half_nodes = 128;
  int levels = 2;  // mesh levels boundary_nodes * 2^l
};

struct StudyEntry {
  int n = 0;
  double op_norm = 0.0;                   // ||A_n - A||
  std::vector<double> tails;              // max tail_bound(A_n, j), j = 0..N
  std::vector<std::complex<double>> t;    // t_n(k) per k
  std::vector<double> t_error;            // |t_n(k) - t(k)|
  std::vector<double> g_distance;         // ||g_n - g||_{H^{1/2}}
  double form_gap = 0.0;                  // <f, (Lambda_sigma - Lambda_sigma_n) f>, f = cos(theta)/sqrt(pi)
  std::vector<SplittingCheck> splitting;  // j = 0..N
};

struct StudyLevel {
  int boundary_nodes = 0;
  std::vector<std::complex<double>> t_base;
  std::vector<double> base_tails;
  std::vector<StudyEntry> entries;
  // Discretization floor of this level: base data against the next finer mesh.
  double op_floor = 0.0;
  std::vector<double> t_floor;
};

struct ConvergenceReport {
  std::string phantom;
  double r1 = 0.0;
  int order = 0;
  int half_nodes = 0;
  std::vector<std::complex<double>> kset;
  std::vector<int> n_values;
  std::vector<StudyLevel> levels;
};

ConvergenceReport convergence_study(const ApproximationSequence& seq, const std::vector<std::complex<double>>& kset,
                                    const StudyConfig& config = {});

// Splitting of A_n - A at fixed j for every member (mesh level 0).
std::vector<SplittingCheck> weak_to_norm_decomposition_check(const ApproximationSequence& seq, int j,
                                                             const StudyConfig& config = {});

void to_json(nlohmann::json& j, const ConvergenceReport& r);
// Companion tables: entries (n, op_norm, form_gap, per-k t and errors) and tails (n, j, tail).
void write_entries_csv(std::ostream& os, const ConvergenceReport& r, int level = 0);
void write_tails_csv(std::ostream& os, const ConvergenceReport& r, int level = 0);
// Gnuplot script plotting the two tables written next to it.
std::string gnuplot_script(const std::string& entries_csv, const std::string& tails_csv, std::size_t k_count);

}  // namespace nachman
