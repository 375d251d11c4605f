#include "nachman/conductivity.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "nachman/errors.h"
#include "nachman/jet.h"

namespace nachman {

template <typename T>
T smooth_step(T s) {
  using std::exp;
  if (value_of(s) <= 0.0) return T(0.0);
  if (value_of(s) >= 1.0) return T(1.0);
  const T a = exp(T(-1.0) / s);
  const T b = exp(T(-1.0) / (T(1.0) - s));
  return a / (a + b);
}

template double smooth_step<double>(double);
template Jet2 smooth_step<Jet2>(Jet2);

namespace {

using std::exp;

template <typename T>
T layered_sigma(const std::vector<double>& radii, const std::vector<double>& values, double w, T r) {
  const double rv = value_of(r);
  const std::size_t m = radii.size();
  if (w > 0.0) {
    for (std::size_t i = 0; i < m; ++i) {
      const double rho = radii[i];
      const double a = values[i];
      const double b = i + 1 < m ? values[i + 1] : 1.0;
      if (a > b && rv >= rho - w && rv < rho) return T(b) + (a - b) * smooth_step((T(rho) - r) / w);
      if (a < b && rv >= rho && rv < rho + w) return T(a) + (b - a) * smooth_step((r - rho) / w);
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    if (rv < radii[i]) return T(values[i]);
  return T(1.0);
}

template <typename T>
T bump_sqrt_sigma(const RadialBump& b, T r) {
  const T s = r / b.support;
  if (value_of(s) >= 1.0) return T(1.0);
  return T(1.0) + b.amplitude * exp(T(1.0) - T(1.0) / (T(1.0) - s * s));
}

template <typename T>
T sqrt_sigma_profile(const Conductivity::Shape& shape, T r) {
  using std::sqrt;
  if (const auto* p = std::get_if<PiecewiseRadial>(&shape)) return sqrt(layered_sigma(p->radii, p->values, p->ramp_width, r));
  if (const auto* b = std::get_if<RadialBump>(&shape)) return bump_sqrt_sigma(*b, r);
  if (const auto* inc = std::get_if<Inclusion>(&shape))
    return sqrt(layered_sigma({inc->radius}, {inc->value}, inc->ramp_width, r));
  throw UnsupportedPhantomError("grid conductivities have no radial profile");
}

void validate_layers(const std::vector<double>& radii, const std::vector<double>& values, double w, double r1) {
  if (radii.size() != values.size()) throw ArgumentError("layer radii and values must have equal length");
  if (w < 0.0) throw ArgumentError("ramp width must be nonnegative");
  double prev_end = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(values[i] > 0.0)) throw ArgumentError("layer values must be positive");
    if (radii[i] <= (i ? radii[i - 1] : 0.0)) throw ArgumentError("layer radii must be increasing and positive");
    const double b = i + 1 < radii.size() ? values[i + 1] : 1.0;
    double lo = radii[i], hi = radii[i];
    if (w > 0.0 && values[i] > b) lo -= w;
    if (w > 0.0 && values[i] < b) hi += w;
    if (lo < prev_end - 1e-14) throw ArgumentError("ramps overlap: ramp width too large for the layer spacing");
    prev_end = hi;
  }
  if (prev_end > r1 + 1e-14) throw ArgumentError("conductivity differs from 1 beyond r1");
}

}  // namespace

double radial_profile(const Conductivity::Shape& shape, double r) { return sqrt_sigma_profile(shape, r); }

std::string to_string(ConductivityKind kind) {
  switch (kind) {
    case ConductivityKind::kPiecewiseRadial: return "piecewise_radial";
    case ConductivityKind::kSmoothRadial: return "smooth_radial";
    case ConductivityKind::kInclusion: return "inclusion";
    case ConductivityKind::kGrid: return "grid";
  }
  return "unknown";
}

Conductivity::Conductivity(Shape shape, double r1) : shape_(std::move(shape)), r1_(r1) {
  if (!(r1 > 0.0 && r1 < 1.0)) throw ArgumentError("r1 must lie in (0, 1)");
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, PiecewiseRadial>) {
          validate_layers(s.radii, s.values, s.ramp_width, r1);
          for (double v : s.values) {
            ess_inf_ = std::min(ess_inf_, v);
            ess_sup_ = std::max(ess_sup_, v);
          }
        } else if constexpr (std::is_same_v<S, RadialBump>) {
          if (!(s.support > 0.0 && s.support <= r1)) throw ArgumentError("bump support must lie in (0, r1]");
          if (!(1.0 + s.amplitude > 0.0)) throw ArgumentError("bump amplitude must exceed -1");
          const double peak = (1.0 + s.amplitude) * (1.0 + s.amplitude);
          ess_inf_ = std::min(1.0, peak);
          ess_sup_ = std::max(1.0, peak);
        } else if constexpr (std::is_same_v<S, Inclusion>) {
          validate_layers({s.radius}, {s.value}, s.ramp_width, 1.0);
          const double reach = std::hypot(s.center.x, s.center.y) + s.radius +
                               (s.value < 1.0 ? s.ramp_width : 0.0);
          if (reach > r1 + 1e-14) throw ArgumentError("inclusion extends beyond r1");
          ess_inf_ = std::min(1.0, s.value);
          ess_sup_ = std::max(1.0, s.value);
        } else {
          if (s.n <= 0 || static_cast<int>(s.values.size()) != s.n * s.n)
            throw ArgumentError("grid conductivity needs n*n values");
          const double h = 2.0 / s.n;
          for (int iy = 0; iy < s.n; ++iy)
            for (int ix = 0; ix < s.n; ++ix) {
              const double v = s.values[static_cast<std::size_t>(iy * s.n + ix)];
              if (!(v > 0.0)) throw ArgumentError("grid conductivity must be positive");
              const double cx = -1.0 + (ix + 0.5) * h, cy = -1.0 + (iy + 0.5) * h;
              const double far = std::hypot(std::abs(cx) + 0.5 * h, std::abs(cy) + 0.5 * h);
              if (far >= r1 && v != 1.0)
                throw ArgumentError("grid conductivity differs from 1 in a cell reaching |x| >= r1");
              ess_inf_ = std::min(ess_inf_, v);
              ess_sup_ = std::max(ess_sup_, v);
            }
        }
      },
      shape_);
}

Conductivity Conductivity::unit() { return Conductivity(PiecewiseRadial{}, 0.5); }

Conductivity Conductivity::two_layer(double inner_value, double interface_radius, double r1) {
  return Conductivity(PiecewiseRadial{{interface_radius}, {inner_value}, 0.0}, r1);
}

Conductivity Conductivity::bump(double amplitude, double support) {
  return Conductivity(RadialBump{amplitude, support}, support);
}

ConductivityKind Conductivity::kind() const {
  if (const auto* p = std::get_if<PiecewiseRadial>(&shape_))
    return p->ramp_width > 0.0 ? ConductivityKind::kSmoothRadial : ConductivityKind::kPiecewiseRadial;
  if (std::holds_alternative<RadialBump>(shape_)) return ConductivityKind::kSmoothRadial;
  if (std::holds_alternative<Inclusion>(shape_)) return ConductivityKind::kInclusion;
  return ConductivityKind::kGrid;
}

bool Conductivity::is_unit() const {
  if (const auto* p = std::get_if<PiecewiseRadial>(&shape_))
    return std::all_of(p->values.begin(), p->values.end(), [](double v) { return v == 1.0; });
  if (const auto* b = std::get_if<RadialBump>(&shape_)) return b->amplitude == 0.0;
  if (const auto* inc = std::get_if<Inclusion>(&shape_)) return inc->value == 1.0;
  const auto& g = std::get<GridSampled>(shape_);
  return std::all_of(g.values.begin(), g.values.end(), [](double v) { return v == 1.0; });
}

bool Conductivity::is_smooth() const {
  if (is_unit()) return true;
  if (const auto* p = std::get_if<PiecewiseRadial>(&shape_)) return p->ramp_width > 0.0;
  if (std::holds_alternative<RadialBump>(shape_)) return true;
  if (const auto* inc = std::get_if<Inclusion>(&shape_)) return inc->ramp_width > 0.0;
  return false;
}

bool Conductivity::is_radial() const {
  return std::holds_alternative<PiecewiseRadial>(shape_) || std::holds_alternative<RadialBump>(shape_) ||
         is_unit();
}

double Conductivity::operator()(double x, double y) const {
  if (const auto* g = std::get_if<GridSampled>(&shape_)) {
    if (x * x + y * y >= r1_ * r1_) return 1.0;
    const double h = 2.0 / g->n;
    const int ix = std::clamp(static_cast<int>(std::floor((x + 1.0) / h)), 0, g->n - 1);
    const int iy = std::clamp(static_cast<int>(std::floor((y + 1.0) / h)), 0, g->n - 1);
    return g->values[static_cast<std::size_t>(iy * g->n + ix)];
  }
  const Point2 c = mesh_center();
  const double r = std::hypot(x - c.x, y - c.y);
  if (const auto* p = std::get_if<PiecewiseRadial>(&shape_)) return layered_sigma(p->radii, p->values, p->ramp_width, r);
  if (const auto* inc = std::get_if<Inclusion>(&shape_))
    return layered_sigma({inc->radius}, {inc->value}, inc->ramp_width, r);
  const double s = bump_sqrt_sigma(std::get<RadialBump>(shape_), r);
  return s * s;
}

double Conductivity::schrodinger_potential(double x, double y) const {
  if (is_unit()) return 0.0;
  if (!is_smooth()) throw UnsupportedPhantomError("Schroedinger potential needs a C^2 conductivity");
  const Point2 c = mesh_center();
  const double r = std::hypot(x - c.x, y - c.y);
  const Jet2 s = sqrt_sigma_profile(shape_, Jet2::variable(std::max(r, 1e-7)));
  const double lap = r < 1e-7 ? 2.0 * s.d2 : s.d2 + s.d1 / r;
  return lap / s.v;
}

std::vector<double> Conductivity::interface_radii() const {
  std::vector<double> out;
  auto add_layers = [&](const std::vector<double>& radii, const std::vector<double>& values, double w) {
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double b = i + 1 < radii.size() ? values[i + 1] : 1.0;
      if (values[i] == b) continue;
      out.push_back(radii[i]);
      if (w > 0.0) out.push_back(values[i] > b ? radii[i] - w : radii[i] + w);
    }
  };
  if (const auto* p = std::get_if<PiecewiseRadial>(&shape_)) add_layers(p->radii, p->values, p->ramp_width);
  if (const auto* inc = std::get_if<Inclusion>(&shape_)) add_layers({inc->radius}, {inc->value}, inc->ramp_width);
  out.erase(std::remove_if(out.begin(), out.end(), [](double r) { return r <= 1e-12; }), out.end());
  std::sort(out.begin(), out.end());
  return out;
}

Point2 Conductivity::mesh_center() const {
  if (const auto* inc = std::get_if<Inclusion>(&shape_)) return inc->center;
  return {};
}

double Conductivity::feature_radius() const {
  if (const auto* inc = std::get_if<Inclusion>(&shape_))
    return inc->radius + (inc->value < 1.0 ? inc->ramp_width : 0.0);
  return r1_;
}

void to_json(nlohmann::json& j, const Conductivity& c) {
  j = nlohmann::json{{"kind", to_string(c.kind())}, {"r1", c.r1()}};
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, PiecewiseRadial>) {
          j["radii"] = s.radii;
          j["values"] = s.values;
          j["ramp_width"] = s.ramp_width;
        } else if constexpr (std::is_same_v<S, RadialBump>) {
          j["amplitude"] = s.amplitude;
          j["support"] = s.support;
        } else if constexpr (std::is_same_v<S, Inclusion>) {
          j["center"] = {s.center.x, s.center.y};
          j["radius"] = s.radius;
          j["value"] = s.value;
          j["ramp_width"] = s.ramp_width;
        } else {
          j["n"] = s.n;
          j["values"] = s.values;
        }
      },
      c.shape());
}

Conductivity conductivity_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "unit") return Conductivity::unit();
  const double r1 = j.at("r1").get<double>();
  if (kind == "piecewise_radial" || (kind == "smooth_radial" && j.contains("radii"))) {
    PiecewiseRadial p{j.at("radii").get<std::vector<double>>(), j.at("values").get<std::vector<double>>(),
                      j.value("ramp_width", 0.0)};
    if (kind == "smooth_radial" && !(p.ramp_width > 0.0))
      throw ArgumentError("smooth_radial layers need ramp_width > 0");
    return Conductivity(std::move(p), r1);
  }
  if (kind == "smooth_radial") return Conductivity(RadialBump{j.at("amplitude").get<double>(), j.at("support").get<double>()}, r1);
  if (kind == "inclusion") {
    const auto c = j.at("center").get<std::array<double, 2>>();
    return Conductivity(Inclusion{{c[0], c[1]}, j.at("radius").get<double>(), j.at("value").get<double>(),
                                  j.value("ramp_width", 0.0)},
                        r1);
  }
  if (kind == "grid") return Conductivity(GridSampled{j.at("n").get<int>(), j.at("values").get<std::vector<double>>()}, r1);
  throw ArgumentError("unknown conductivity kind '" + kind + "'");
}

Conductivity load_conductivity(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open phantom file " + path);
  nlohmann::json j;
  in >> j;
  return conductivity_from_json(j);
}

}  // namespace nachman
