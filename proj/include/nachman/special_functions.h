#pragma once

#include <complex>

namespace nachman {

inline constexpr double kEulerGamma = 0.57721566490153286061;

// Exponential integral E1(z) = int_z^inf e^{-t}/t dt, principal branch
// (cut along the negative real axis). Throws DomainError at z = 0.
std::complex<double> expint_e1(std::complex<double> z);

// Entire part Ein(z) = sum_{n>=1} (-1)^{n+1} z^n / (n n!), so that
// E1(z) = -gamma - log(z) + Ein(z).
std::complex<double> expint_ein(std::complex<double> z);

}  // namespace nachman
