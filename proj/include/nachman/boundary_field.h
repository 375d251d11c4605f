#pragma once

// Fourier calculus on the unit circle in the orthonormal basis
// phi_n(theta) = exp(i n theta) / sqrt(2 pi), truncated to |n| <= N.

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

namespace nachman {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Sobolev smoothness order s of the H^s(circle) norm.
struct SobolevIndex {
  double s = 0.0;
  explicit SobolevIndex(double value);
};

// Point of the closed unit disc in polar coordinates.
struct DiscPoint {
  double r = 0.0;
  double theta = 0.0;
};

class BoundaryField {
 public:
  // Zero field of truncation order N.
  explicit BoundaryField(int order = 0);
  // Coefficients ordered n = -N..N; size must be odd.
  explicit BoundaryField(std::vector<cplx> coeffs);

  static BoundaryField basis(int order, int n);

  // Samples f at 2*M equispaced angles theta_j = pi j / M and returns the
  // truncated Fourier coefficients (trapezoidal rule).
  template <typename F>
  static BoundaryField from_samples(int order, int nodes, F&& f);

  int order() const { return order_; }
  int size() const { return static_cast<int>(coeffs_.size()); }

  cplx operator[](int n) const { return coeffs_[static_cast<std::size_t>(n + order_)]; }
  cplx& operator[](int n) { return coeffs_[static_cast<std::size_t>(n + order_)]; }

  std::span<const cplx> coeffs() const { return coeffs_; }
  std::span<cplx> coeffs() { return coeffs_; }

  // Value of the trigonometric polynomial at angle theta.
  cplx evaluate(double theta) const;

  // True when b_{-n} = conj(b_n) within tol.
  bool is_real(double tol = 1e-12) const;

  // Same data at order M (zero-padded or truncated).
  BoundaryField resized(int order) const;

  BoundaryField& operator+=(const BoundaryField& other);
  BoundaryField& operator-=(const BoundaryField& other);
  BoundaryField& operator*=(cplx scale);

 private:
  int order_;
  std::vector<cplx> coeffs_;
};

BoundaryField operator+(BoundaryField a, const BoundaryField& b);
BoundaryField operator-(BoundaryField a, const BoundaryField& b);
BoundaryField operator*(cplx scale, BoundaryField a);

// P_j: keep |n| <= j. Throws ArgumentError unless 0 <= j <= N.
BoundaryField project(const BoundaryField& f, int j);

// (sum (1+|n|)^{2s} |b_n|^2)^{1/2}
double hs_norm(const BoundaryField& f, SobolevIndex s);

// Harmonic extension u(r,theta) = sum r^|n| b_n phi_n(theta).
// Throws ArgumentError for any point with r > 1 or r < 0.
std::vector<cplx> harmonic_extend(const BoundaryField& f, std::span<const DiscPoint> points);

// Gradient (d/dx1, d/dx2) of the harmonic extension at a Cartesian point.
std::array<cplx, 2> harmonic_extend_gradient(const BoundaryField& f, double x1, double x2);

// Bilinear dual pairing <g, h> = int g h ds = sum_n g_n h_{-n}.
cplx bilinear_pairing(const BoundaryField& g, const BoundaryField& h);

// Sesquilinear l2 inner product sum conj(a_n) b_n.
cplx inner_product(const BoundaryField& a, const BoundaryField& b);

void to_json(nlohmann::json& j, const BoundaryField& f);
void from_json(const nlohmann::json& j, BoundaryField& f);

template <typename F>
BoundaryField BoundaryField::from_samples(int order, int nodes, F&& f) {
  BoundaryField out(order);
  std::vector<cplx> samples(static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) samples[static_cast<std::size_t>(j)] = f(kTwoPi * j / nodes);
  const double w = kTwoPi / nodes / std::sqrt(kTwoPi);
  for (int n = -order; n <= order; ++n) {
    cplx acc = 0.0;
    for (int j = 0; j < nodes; ++j)
      acc += samples[static_cast<std::size_t>(j)] * std::polar(1.0, -kTwoPi * n * j / nodes);
    out[n] = acc * w;
  }
  return out;
}

}  // namespace nachman
