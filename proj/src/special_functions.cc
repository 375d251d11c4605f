#include "nachman/special_functions.h"

#include <cmath>

#include "nachman/errors.h"

namespace nachman {
namespace {

using cplx = std::complex<double>;

cplx ein_series(cplx z) {
  cplx term = z;  // (-1)^{n+1} z^n / n!
  cplx sum = z;
  for (int n = 2; n < 400; ++n) {
    term *= -z / static_cast<double>(n);
    const cplx add = term / static_cast<double>(n);
    sum += add;
    if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Modified Lentz evaluation of
// E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...))).
cplx e1_continued_fraction(cplx z) {
  constexpr double tiny = 1e-300;
  cplx b = z + 1.0;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < 5000; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cplx del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-z);
}

bool use_series(cplx z) {
  const double r = std::abs(z);
  if (r <= 2.0) return true;
  // Near the negative real axis the continued fraction converges slowly while
  // the series suffers no cancellation (|E1| ~ e^{|Re z|}/|z| there).
  return z.real() < 0.0 && std::abs(z.imag()) <= -z.real() && r < 60.0;
}

}  // namespace

cplx expint_e1(cplx z) {
  if (z == cplx(0.0, 0.0)) throw DomainError("E1 is singular at 0");
  if (use_series(z)) return -kEulerGamma - std::log(z) + ein_series(z);
  return e1_continued_fraction(z);
}

cplx expint_ein(cplx z) {
  if (std::abs(z) <= 4.0) return ein_series(z);
  return expint_e1(z) + kEulerGamma + std::log(z);
}

}  // namespace nachman
