#pragma once

#include <cmath>

namespace nachman {

// Second-order forward-mode jet: value with first and second derivative
// along one variable. Used to differentiate radial profiles exactly.
struct Jet2 {
  double v = 0.0, d1 = 0.0, d2 = 0.0;

  constexpr Jet2() = default;
  constexpr Jet2(double value) : v(value) {}  // NOLINT: constants promote
  constexpr Jet2(double value, double first, double second) : v(value), d1(first), d2(second) {}

  static constexpr Jet2 variable(double x) { return {x, 1.0, 0.0}; }
};

inline Jet2 operator+(Jet2 a, Jet2 b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
inline Jet2 operator-(Jet2 a, Jet2 b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
inline Jet2 operator-(Jet2 a) { return {-a.v, -a.d1, -a.d2}; }
inline Jet2 operator*(Jet2 a, Jet2 b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
inline Jet2 operator/(Jet2 a, Jet2 b) {
  const double inv = 1.0 / b.v;
  const double q = a.v * inv;
  const double q1 = (a.d1 - q * b.d1) * inv;
  const double q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) * inv;
  return {q, q1, q2};
}
inline Jet2 exp(Jet2 a) {
  const double e = std::exp(a.v);
  return {e, e * a.d1, e * (a.d2 + a.d1 * a.d1)};
}
inline Jet2 sqrt(Jet2 a) {
  const double s = std::sqrt(a.v);
  const double s1 = a.d1 / (2.0 * s);
  return {s, s1, (a.d2 - 2.0 * s1 * s1) / (2.0 * s)};
}

inline double value_of(double x) { return x; }
inline double value_of(const Jet2& x) { return x.v; }

}  // namespace nachman
