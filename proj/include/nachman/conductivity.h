#pragma once

// Conductivity phantoms on the unit disc. Every phantom equals 1 for
// |x| >= r1 and is bounded between ess_inf > 0 and ess_sup.

#include <array>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace nachman {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Concentric layers: values[i] on radii[i-1] <= r < radii[i] (radii[-1] = 0),
// 1 outside radii.back(). ramp_width > 0 replaces each jump by a C-infinity
// monotone ramp placed on the side where it stays below the sharp profile.
struct PiecewiseRadial {
  std::vector<double> radii;
  std::vector<double> values;
  double ramp_width = 0.0;
};

// sqrt(sigma) = 1 + amplitude * exp(1 - 1 / (1 - (r/support)^2)) for r < support.
struct RadialBump {
  double amplitude = 0.3;
  double support = 0.6;
};

// Disc of radius `radius` centred at `center` with value `value`, 1 elsewhere;
// ramp_width as for PiecewiseRadial.
struct Inclusion {
  Point2 center;
  double radius = 0.2;
  double value = 2.0;
  double ramp_width = 0.0;
};

// Cell values on a uniform n x n grid over [-1,1]^2 (row-major, y outer),
// nearest-cell lookup.
struct GridSampled {
  int n = 0;
  std::vector<double> values;
};

enum class ConductivityKind { kPiecewiseRadial, kSmoothRadial, kInclusion, kGrid };

std::string to_string(ConductivityKind kind);

class Conductivity {
 public:
  using Shape = std::variant<PiecewiseRadial, RadialBump, Inclusion, GridSampled>;

  // Validates invariants; throws ArgumentError on violation.
  Conductivity(Shape shape, double r1);

  static Conductivity unit();
  static Conductivity two_layer(double inner_value, double interface_radius, double r1);
  static Conductivity bump(double amplitude, double support);

  ConductivityKind kind() const;
  const Shape& shape() const { return shape_; }
  double r1() const { return r1_; }
  double ess_inf() const { return ess_inf_; }
  double ess_sup() const { return ess_sup_; }

  // True when sigma is C^2 (bump or ramped phantoms), so that the
  // Schroedinger potential q = Laplacian(sqrt sigma)/sqrt sigma exists.
  bool is_smooth() const;
  // True when sigma depends only on |x|.
  bool is_radial() const;
  bool is_unit() const;

  double operator()(double x, double y) const;

  // q = Laplacian(sqrt sigma)/sqrt sigma, from exact derivatives of the
  // profile. Throws UnsupportedPhantomError for non-smooth phantoms.
  double schrodinger_potential(double x, double y) const;

  // Radii at which the mesh must place a ring (jumps and ramp ends), measured
  // from `mesh_center()`.
  std::vector<double> interface_radii() const;
  Point2 mesh_center() const;
  // Radius of the disc (about mesh_center()) outside of which the profile
  // varies no more (used to bound the mesh deformation region).
  double feature_radius() const;

 private:
  Shape shape_;
  double r1_;
  double ess_inf_ = 1.0;
  double ess_sup_ = 1.0;
};

void to_json(nlohmann::json& j, const Conductivity& c);
Conductivity conductivity_from_json(const nlohmann::json& j);
Conductivity load_conductivity(const std::string& path);

// Smooth monotone step: 0 for s <= 0, 1 for s >= 1, C-infinity in between.
template <typename T>
T smooth_step(T s);

// sqrt(sigma) as a function of the radial coordinate, for smooth radial
// shapes (RadialBump, ramped PiecewiseRadial, ramped Inclusion about its centre).
double radial_profile(const Conductivity::Shape& shape, double r);

}  // namespace nachman
