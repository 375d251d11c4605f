#include "nachman/boundary_field.h"

#include <cmath>
#include <string>

#include "nachman/errors.h"

namespace nachman {

SobolevIndex::SobolevIndex(double value) : s(value) {
  if (!std::isfinite(value)) throw ArgumentError("Sobolev index must be finite");
}

BoundaryField::BoundaryField(int order) : order_(order) {
  if (order < 0) throw ArgumentError("truncation order must be nonnegative");
  coeffs_.assign(static_cast<std::size_t>(2 * order + 1), cplx{});
}

BoundaryField::BoundaryField(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() % 2 == 0)
    throw ArgumentError("coefficient vector must have odd length 2N+1");
  order_ = static_cast<int>(coeffs_.size() / 2);
}

BoundaryField BoundaryField::basis(int order, int n) {
  if (std::abs(n) > order) throw ArgumentError("basis index outside truncation");
  BoundaryField f(order);
  f[n] = 1.0;
  return f;
}

cplx BoundaryField::evaluate(double theta) const {
  cplx acc = 0.0;
  for (int n = -order_; n <= order_; ++n) acc += (*this)[n] * std::polar(1.0, n * theta);
  return acc / std::sqrt(kTwoPi);
}

bool BoundaryField::is_real(double tol) const {
  for (int n = 0; n <= order_; ++n)
    if (std::abs((*this)[-n] - std::conj((*this)[n])) > tol) return false;
  return true;
}

BoundaryField BoundaryField::resized(int order) const {
  BoundaryField out(order);
  const int m = std::min(order, order_);
  for (int n = -m; n <= m; ++n) out[n] = (*this)[n];
  return out;
}

BoundaryField& BoundaryField::operator+=(const BoundaryField& other) {
  if (other.order_ != order_) throw ArgumentError("order mismatch in BoundaryField +");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

BoundaryField& BoundaryField::operator-=(const BoundaryField& other) {
  if (other.order_ != order_) throw ArgumentError("order mismatch in BoundaryField -");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

BoundaryField& BoundaryField::operator*=(cplx scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

BoundaryField operator+(BoundaryField a, const BoundaryField& b) { return a += b; }
BoundaryField operator-(BoundaryField a, const BoundaryField& b) { return a -= b; }
BoundaryField operator*(cplx scale, BoundaryField a) { return a *= scale; }

BoundaryField project(const BoundaryField& f, int j) {
  if (j < 0 || j > f.order())
    throw ArgumentError("projection order " + std::to_string(j) + " outside [0, " +
                        std::to_string(f.order()) + "]");
  BoundaryField out(f.order());
  for (int n = -j; n <= j; ++n) out[n] = f[n];
  return out;
}

double hs_norm(const BoundaryField& f, SobolevIndex s) {
  double acc = 0.0;
  for (int n = -f.order(); n <= f.order(); ++n)
    acc += std::pow(1.0 + std::abs(n), 2.0 * s.s) * std::norm(f[n]);
  return std::sqrt(acc);
}

std::vector<cplx> harmonic_extend(const BoundaryField& f, std::span<const DiscPoint> points) {
  std::vector<cplx> out;
  out.reserve(points.size());
  const double scale = 1.0 / std::sqrt(kTwoPi);
  for (const auto& p : points) {
    if (!(p.r >= 0.0 && p.r <= 1.0))
      throw ArgumentError("harmonic extension point outside the closed unit disc");
    cplx acc = f[0];
    double rn = 1.0;
    for (int n = 1; n <= f.order(); ++n) {
      rn *= p.r;
      acc += rn * (f[n] * std::polar(1.0, n * p.theta) + f[-n] * std::polar(1.0, -n * p.theta));
    }
    out.push_back(acc * scale);
  }
  return out;
}

std::array<cplx, 2> harmonic_extend_gradient(const BoundaryField& f, double x1, double x2) {
  // u = sum_{n>=0} b_n z^n + sum_{n>0} b_{-n} conj(z)^n, scaled; d/dx1 = d/dz + d/dzbar,
  // d/dx2 = i (d/dz - d/dzbar).
  const cplx z(x1, x2);
  cplx dz = 0.0, dzbar = 0.0;
  cplx zpow = 1.0;
  for (int n = 1; n <= f.order(); ++n) {
    dz += static_cast<double>(n) * f[n] * zpow;
    dzbar += static_cast<double>(n) * f[-n] * std::conj(zpow);
    zpow *= z;
  }
  const double scale = 1.0 / std::sqrt(kTwoPi);
  return {scale * (dz + dzbar), scale * cplx(0.0, 1.0) * (dz - dzbar)};
}

cplx bilinear_pairing(const BoundaryField& g, const BoundaryField& h) {
  const int m = std::min(g.order(), h.order());
  cplx acc = 0.0;
  for (int n = -m; n <= m; ++n) acc += g[n] * h[-n];
  return acc;
}

cplx inner_product(const BoundaryField& a, const BoundaryField& b) {
  const int m = std::min(a.order(), b.order());
  cplx acc = 0.0;
  for (int n = -m; n <= m; ++n) acc += std::conj(a[n]) * b[n];
  return acc;
}

void to_json(nlohmann::json& j, const BoundaryField& f) {
  j = nlohmann::json::array();
  for (const auto& c : f.coeffs()) j.push_back({c.real(), c.imag()});
}

void from_json(const nlohmann::json& j, BoundaryField& f) {
  if (!j.is_array()) throw ArgumentError("BoundaryField JSON must be an array of [re, im] pairs");
  std::vector<cplx> coeffs;
  coeffs.reserve(j.size());
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw ArgumentError("BoundaryField JSON entries must be [re, im] pairs");
    coeffs.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  f = BoundaryField(std::move(coeffs));
}

}  // namespace nachman
