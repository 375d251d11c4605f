#pragma once

#include <iosfwd>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "nachman/boundary_field.h"

namespace nachman {

enum class DnTag { kFullMap, kDifference };

// A Dirichlet-to-Neumann operator (or a difference of two) in the phi_n
// basis: (A f)_m = sum_n entries(m + N, n + N) f_n for |m|, |n| <= N.
struct DnMatrix {
  Eigen::MatrixXcd entries;
  int order = 0;
  DnTag tag = DnTag::kFullMap;

  DnMatrix() = default;
  DnMatrix(Eigen::MatrixXcd m, int n, DnTag t);

  static DnMatrix zero(int order, DnTag tag);

  cplx operator()(int m, int n) const { return entries(m + order, n + order); }

  BoundaryField apply(const BoundaryField& f) const;

  // Largest |entry(m,n) - conj(entry(n,m))|.
  double hermitian_defect() const;
};

DnMatrix operator-(const DnMatrix& a, const DnMatrix& b);

// Diagonal matrix with entries |n|: the DN map of the unit conductivity.
DnMatrix dn_map_identity(int order);

void to_json(nlohmann::json& j, const DnMatrix& a);
void from_json(const nlohmann::json& j, DnMatrix& a);

// CSV rows "n,re,im" of the diagonal entries.
void write_diagonal_csv(std::ostream& os, const DnMatrix& a);

}  // namespace nachman
