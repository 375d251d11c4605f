#pragma once

// Uniform n x n grids on a periodic box [-L, L)^2 and FFT-applied
// convolutions with kernels truncated to a disc. Points are written as
// complex numbers x1 + i x2; arrays are row-major with x2 outer.

#include <complex>
#include <vector>

namespace nachman {

using cplx = std::complex<double>;
using Field = std::vector<cplx>;

struct PeriodicGrid {
  int n = 0;
  double half_width = 0.0;

  PeriodicGrid(int points, double half_width);

  double h() const { return 2.0 * half_width / n; }
  std::size_t size() const { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n); }
  cplx point(int i1, int i2) const { return {(i1 - n / 2) * h(), (i2 - n / 2) * h()}; }
  cplx point(std::size_t index) const {
    return point(static_cast<int>(index % static_cast<std::size_t>(n)), static_cast<int>(index / static_cast<std::size_t>(n)));
  }
  // Angular frequency xi1 + i xi2 of the FFT bin (j1, j2).
  cplx frequency(int j1, int j2) const;
};

// In-place unnormalized 2-D DFT (sign -1 forward, +1 inverse). Plans are
// cached per size and shared between threads.
void fft2(Field& data, int n, bool inverse);

// Fourier multiplier of a kernel, sampled at the grid frequencies. Applying
// it computes int K(x - y) f(y) dy for the trigonometric interpolant of f.
class Convolution {
 public:
  Convolution(PeriodicGrid grid, Field multiplier);

  const PeriodicGrid& grid() const { return grid_; }
  const Field& multiplier() const { return multiplier_; }

  Field apply(const Field& f) const;

 private:
  PeriodicGrid grid_;
  Field multiplier_;
};

// -log|x| / (2 pi) restricted to |x| < radius (analytic transform).
Convolution log_convolution(const PeriodicGrid& grid, double radius);
// Solid Cauchy transform, kernel 1/(pi z) on |z| < radius.
Convolution cauchy_convolution(const PeriodicGrid& grid, double radius);
// Beurling transform, principal-value kernel -1/(pi z^2) on |z| < radius.
Convolution beurling_convolution(const PeriodicGrid& grid, double radius);
// Quadrature h^2 sum K(x - y) f(y) for a smooth kernel sampled at grid
// offsets with |x - y| < radius.
template <typename Kernel>
Field sampled_multiplier(const PeriodicGrid& grid, double radius, Kernel&& kernel) {
  Field k(grid.size(), 0.0);
  const double h = grid.h();
  for (int i2 = 0; i2 < grid.n; ++i2)
    for (int i1 = 0; i1 < grid.n; ++i1) {
      const int d1 = i1 < grid.n / 2 ? i1 : i1 - grid.n;
      const int d2 = i2 < grid.n / 2 ? i2 : i2 - grid.n;
      const cplx d(d1 * h, d2 * h);
      if (std::abs(d) < radius) k[static_cast<std::size_t>(i2) * grid.n + i1] = kernel(d) * h * h;
    }
  fft2(k, grid.n, false);
  return k;
}

// Smallest integer >= n whose only prime factors are 2, 3 and 5.
int fft_friendly_size(int n);

}  // namespace nachman
