#include "nachman/dn_matrix.h"

#include <ostream>

#include "nachman/errors.h"

namespace nachman {

DnMatrix::DnMatrix(Eigen::MatrixXcd m, int n, DnTag t) : entries(std::move(m)), order(n), tag(t) {
  if (entries.rows() != 2 * n + 1 || entries.cols() != 2 * n + 1)
    throw ArgumentError("DN matrix must be (2N+1) x (2N+1)");
}

DnMatrix DnMatrix::zero(int order, DnTag tag) {
  return DnMatrix(Eigen::MatrixXcd::Zero(2 * order + 1, 2 * order + 1), order, tag);
}

BoundaryField DnMatrix::apply(const BoundaryField& f) const {
  const BoundaryField g = f.order() == order ? f : f.resized(order);
  Eigen::Map<const Eigen::VectorXcd> in(g.coeffs().data(), g.size());
  Eigen::VectorXcd out = entries * in;
  return BoundaryField(std::vector<cplx>(out.data(), out.data() + out.size()));
}

double DnMatrix::hermitian_defect() const {
  return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

DnMatrix operator-(const DnMatrix& a, const DnMatrix& b) {
  if (a.order != b.order) throw ArgumentError("DN matrix order mismatch");
  return DnMatrix(a.entries - b.entries, a.order, DnTag::kDifference);
}

DnMatrix dn_map_identity(int order) {
  if (order < 0) throw ArgumentError("truncation order must be nonnegative");
  DnMatrix a = DnMatrix::zero(order, DnTag::kFullMap);
  for (int n = -order; n <= order; ++n) a.entries(n + order, n + order) = std::abs(n);
  return a;
}

void to_json(nlohmann::json& j, const DnMatrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < a.entries.rows(); ++r)
    for (Eigen::Index c = 0; c < a.entries.cols(); ++c)
      rows.push_back({a.entries(r, c).real(), a.entries(r, c).imag()});
  j = {{"N", a.order},
       {"tag", a.tag == DnTag::kFullMap ? "full_map" : "difference"},
       {"entries", rows}};
}

void from_json(const nlohmann::json& j, DnMatrix& a) {
  const int order = j.at("N").get<int>();
  const auto& e = j.at("entries");
  const int dim = 2 * order + 1;
  if (static_cast<int>(e.size()) != dim * dim) throw ArgumentError("DN matrix JSON has wrong entry count");
  Eigen::MatrixXcd m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      const auto& p = e[static_cast<std::size_t>(r * dim + c)];
      m(r, c) = cplx(p[0].get<double>(), p[1].get<double>());
    }
  const std::string tag = j.value("tag", "full_map");
  a = DnMatrix(std::move(m), order, tag == "difference" ? DnTag::kDifference : DnTag::kFullMap);
}

void write_diagonal_csv(std::ostream& os, const DnMatrix& a) {
  os << "n,re,im\n";
  os.precision(17);
  for (int n = -a.order; n <= a.order; ++n) os << n << ',' << a(n, n).real() << ',' << a(n, n).imag() << '\n';
}

}  // namespace nachman
