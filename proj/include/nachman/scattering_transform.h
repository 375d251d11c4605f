#pragma once

// Samples of a scattering transform t(k) on a polar k-grid, with
// interpolation and CSV/JSON exchange.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nachman/boundary_field.h"

namespace nachman {

enum class TransformSource { kBoundary, kDirect, kBeltrami };

std::string to_string(TransformSource source);
TransformSource transform_source_from_string(const std::string& name);

// Polar grid: radii R (i+1)/radial for i < radial, angles 2 pi j/angular.
struct PolarGrid {
  double radius = 6.0;
  int radial = 8;
  int angular = 8;

  int size() const { return radial * angular; }
  double r(int i) const { return radius * (i + 1) / radial; }
  double angle(int j) const { return kTwoPi * j / angular; }
  // Sample index i * angular + j.
  cplx point(int i, int j) const { return std::polar(r(i), angle(j)); }
  std::vector<cplx> points() const;
};

struct ScatteringTransform {
  PolarGrid grid;
  std::vector<cplx> values;  // ordered as grid.points()
  double cutoff = 0.0;       // t is taken as 0 for |k| > cutoff
  TransformSource source = TransformSource::kBoundary;

  std::vector<cplx> kgrid() const { return grid.points(); }

  // Linear in angle, cubic in radius, with t(0) = 0; zero beyond the cutoff
  // and beyond the outermost radius.
  cplx operator()(cplx k) const;

  // Max |t(k) - conj(t(-conj k))| over the grid (requires an even angular count).
  double symmetry_defect() const;
};

// Evaluates t at every grid point (concurrently; f must be thread-safe).
ScatteringTransform sample_transform(const PolarGrid& grid, double cutoff, TransformSource source,
                                     const std::function<cplx(cplx)>& f);

// CSV rows "re_k,im_k,re_t,im_t" with a header line.
void write_csv(std::ostream& os, const ScatteringTransform& t);
// Reads the CSV written above and recovers the polar layout.
ScatteringTransform read_transform_csv(std::istream& is, double cutoff);
ScatteringTransform load_transform_csv(const std::string& path, double cutoff);

void to_json(nlohmann::json& j, const ScatteringTransform& t);
void from_json(const nlohmann::json& j, ScatteringTransform& t);

}  // namespace nachman
