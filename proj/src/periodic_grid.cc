#include "nachman/periodic_grid.h"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include <fftw3.h>

#include "nachman/boundary_field.h"
#include "nachman/errors.h"

namespace nachman {
namespace {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

const Plans& plans_for(int n) {
  static std::map<int, Plans> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<cplx> scratch(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  Plans plans;
  plans.forward = fftw_plan_dft_2d(n, n, p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.backward = fftw_plan_dft_2d(n, n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  return cache.emplace(n, plans).first->second;
}

double bessel_j(int order, double x) { return std::cyl_bessel_j(static_cast<double>(order), x); }

template <typename Symbol>
Convolution from_symbol(const PeriodicGrid& grid, Symbol&& symbol) {
  Field m(grid.size());
  for (int j2 = 0; j2 < grid.n; ++j2)
    for (int j1 = 0; j1 < grid.n; ++j1) m[static_cast<std::size_t>(j2) * grid.n + j1] = symbol(grid.frequency(j1, j2));
  return Convolution(grid, std::move(m));
}

}  // namespace

PeriodicGrid::PeriodicGrid(int points, double half) : n(points), half_width(half) {
  if (points < 4 || points % 2 != 0) throw ArgumentError("grid size must be even and at least 4");
  if (!(half > 0.0)) throw ArgumentError("grid half-width must be positive");
}

cplx PeriodicGrid::frequency(int j1, int j2) const {
  const int s1 = j1 < n / 2 ? j1 : j1 - n;
  const int s2 = j2 < n / 2 ? j2 : j2 - n;
  const double scale = kPi / half_width;
  return {s1 * scale, s2 * scale};
}

void fft2(Field& data, int n, bool inverse) {
  if (data.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw ArgumentError("field size does not match the grid");
  const Plans& plans = plans_for(n);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(inverse ? plans.backward : plans.forward, p, p);
}

Convolution::Convolution(PeriodicGrid grid, Field multiplier) : grid_(grid), multiplier_(std::move(multiplier)) {
  if (multiplier_.size() != grid_.size()) throw ArgumentError("multiplier size does not match the grid");
}

Field Convolution::apply(const Field& f) const {
  Field work = f;
  fft2(work, grid_.n, false);
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (std::size_t i = 0; i < work.size(); ++i) work[i] *= multiplier_[i] * scale;
  fft2(work, grid_.n, true);
  return work;
}

Convolution log_convolution(const PeriodicGrid& grid, double radius) {
  const double r = radius, lr = std::log(radius);
  return from_symbol(grid, [&](cplx xi) -> cplx {
    const double rho = std::abs(xi);
    if (rho == 0.0) return -0.5 * r * r * lr + 0.25 * r * r;
    return -r * lr * bessel_j(1, rho * r) / rho + (1.0 - bessel_j(0, rho * r)) / (rho * rho);
  });
}

Convolution cauchy_convolution(const PeriodicGrid& grid, double radius) {
  return from_symbol(grid, [&](cplx xi) -> cplx {
    const double rho = std::abs(xi);
    if (rho == 0.0) return 0.0;
    return cplx(0.0, -2.0) * std::conj(xi) / rho * (1.0 - bessel_j(0, rho * radius)) / rho;
  });
}

Convolution beurling_convolution(const PeriodicGrid& grid, double radius) {
  return from_symbol(grid, [&](cplx xi) -> cplx {
    const double rho = std::abs(xi);
    if (rho == 0.0) return 0.0;
    const cplx phase = std::conj(xi) / xi;
    return phase * (1.0 - 2.0 * bessel_j(1, rho * radius) / (rho * radius));
  });
}

int fft_friendly_size(int n) {
  for (int m = std::max(n, 1);; ++m) {
    int r = m;
    for (int p : {2, 3, 5})
      while (r % p == 0) r /= p;
    if (r == 1 && m % 2 == 0) return m;
  }
}

}  // namespace nachman
