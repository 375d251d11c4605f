#include "nachman/scattering_transform.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "nachman/errors.h"
#include "nachman/parallel.h"

namespace nachman {

std::string to_string(TransformSource source) {
  switch (source) {
    case TransformSource::kBoundary:
      return "boundary";
    case TransformSource::kDirect:
      return "direct";
    case TransformSource::kBeltrami:
      return "beltrami";
  }
  return "boundary";
}

TransformSource transform_source_from_string(const std::string& name) {
  if (name == "boundary") return TransformSource::kBoundary;
  if (name == "direct") return TransformSource::kDirect;
  if (name == "beltrami") return TransformSource::kBeltrami;
  throw ArgumentError("unknown transform source '" + name + "'");
}

std::vector<cplx> PolarGrid::points() const {
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (int i = 0; i < radial; ++i)
    for (int j = 0; j < angular; ++j) out.push_back(point(i, j));
  return out;
}

cplx ScatteringTransform::operator()(cplx k) const {
  const double r = std::abs(k);
  if (r > cutoff || r > grid.radius * (1.0 + 1e-12) || values.empty()) return 0.0;
  const int nr = grid.radial, na = grid.angular;
  const double dr = grid.radius / nr;
  double a = std::arg(k) / kTwoPi * na;
  if (a < 0) a += na;
  const int j0 = static_cast<int>(std::floor(a)) % na;
  const int j1 = (j0 + 1) % na;
  const double wa = a - std::floor(a);
  // radial node m (0..nr) sits at m dr, node 0 carries t(0) = 0
  auto node = [&](int m, int j) -> cplx {
    return m == 0 ? cplx(0.0) : values[static_cast<std::size_t>((m - 1) * na + j)];
  };
  const double s = r / dr;
  int base = static_cast<int>(std::floor(s)) - 1;
  const int points = std::min(4, nr + 1);
  base = std::clamp(base, 0, nr + 1 - points);
  auto radial = [&](int j) {
    cplx acc = 0.0;
    for (int p = 0; p < points; ++p) {
      double w = 1.0;
      for (int q = 0; q < points; ++q)
        if (q != p) w *= (s - (base + q)) / static_cast<double>(p - q);
      acc += w * node(base + p, j);
    }
    return acc;
  };
  return (1.0 - wa) * radial(j0) + wa * radial(j1);
}

double ScatteringTransform::symmetry_defect() const {
  if (grid.angular % 2 != 0) throw ArgumentError("symmetry check needs an even number of angles");
  const int na = grid.angular;
  double worst = 0.0;
  for (int i = 0; i < grid.radial; ++i)
    for (int j = 0; j < na; ++j) {
      // -conj(r e^{i a}) = r e^{i (pi - a)}
      const int mirror = ((na / 2 - j) % na + na) % na;
      const cplx a = values[static_cast<std::size_t>(i * na + j)];
      const cplx b = values[static_cast<std::size_t>(i * na + mirror)];
      worst = std::max(worst, std::abs(a - std::conj(b)));
    }
  return worst;
}

ScatteringTransform sample_transform(const PolarGrid& grid, double cutoff, TransformSource source,
                                     const std::function<cplx(cplx)>& f) {
  if (grid.radial < 1 || grid.angular < 1 || !(grid.radius > 0.0)) throw ArgumentError("empty k-grid");
  ScatteringTransform t{grid, {}, cutoff, source};
  const auto pts = grid.points();
  t.values.assign(pts.size(), 0.0);
  parallel_for(pts.size(), [&](std::size_t i) {
    t.values[i] = std::abs(pts[i]) <= cutoff ? f(pts[i]) : cplx(0.0);
  });
  return t;
}

void write_csv(std::ostream& os, const ScatteringTransform& t) {
  os << "re_k,im_k,re_t,im_t\n" << std::setprecision(17);
  const auto pts = t.grid.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    os << pts[i].real() << ',' << pts[i].imag() << ',' << t.values[i].real() << ',' << t.values[i].imag() << '\n';
}

ScatteringTransform read_transform_csv(std::istream& is, double cutoff) {
  std::string line;
  std::vector<cplx> ks, ts;
  while (std::getline(is, line)) {
    if (line.empty() || !(std::isdigit(static_cast<unsigned char>(line[0])) || line[0] == '-' || line[0] == '.'))
      continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double a, b, c, d;
    if (!(row >> a >> b >> c >> d)) throw ArgumentError("malformed transform row: " + line);
    ks.emplace_back(a, b);
    ts.emplace_back(c, d);
  }
  if (ks.empty()) throw ArgumentError("transform file has no samples");
  double rmax = 0.0;
  std::vector<double> radii;
  for (cplx k : ks) {
    const double r = std::abs(k);
    rmax = std::max(rmax, r);
    if (std::none_of(radii.begin(), radii.end(), [&](double q) { return std::abs(q - r) < 1e-9 * (1 + r); }))
      radii.push_back(r);
  }
  const int nr = static_cast<int>(radii.size());
  if (ks.size() % static_cast<std::size_t>(nr) != 0) throw ArgumentError("samples do not form a polar grid");
  PolarGrid grid{rmax, nr, static_cast<int>(ks.size()) / nr};
  ScatteringTransform t{grid, std::vector<cplx>(ks.size(), 0.0), cutoff, TransformSource::kBoundary};
  std::vector<bool> seen(ks.size(), false);
  for (std::size_t s = 0; s < ks.size(); ++s) {
    const double ri = std::abs(ks[s]) / rmax * nr - 1.0;
    double aj = std::arg(ks[s]) / kTwoPi * grid.angular;
    if (aj < -1e-9) aj += grid.angular;
    const long i = std::lround(ri), j = std::lround(aj) % grid.angular;
    if (std::abs(ri - static_cast<double>(i)) > 1e-6 || std::abs(aj - std::round(aj)) > 1e-6 || i < 0 || i >= nr)
      throw ArgumentError("samples do not form a polar grid");
    const std::size_t idx = static_cast<std::size_t>(i * grid.angular + j);
    if (seen[idx]) throw ArgumentError("duplicate polar grid sample");
    seen[idx] = true;
    t.values[idx] = ts[s];
  }
  return t;
}

ScatteringTransform load_transform_csv(const std::string& path, double cutoff) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  return read_transform_csv(in, cutoff);
}

void to_json(nlohmann::json& j, const ScatteringTransform& t) {
  nlohmann::json vals = nlohmann::json::array();
  const auto pts = t.grid.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    vals.push_back({pts[i].real(), pts[i].imag(), t.values[i].real(), t.values[i].imag()});
  j = {{"source", to_string(t.source)},
       {"cutoff", t.cutoff},
       {"grid", {{"radius", t.grid.radius}, {"radial", t.grid.radial}, {"angular", t.grid.angular}}},
       {"samples", vals}};
}

void from_json(const nlohmann::json& j, ScatteringTransform& t) {
  t.source = transform_source_from_string(j.at("source").get<std::string>());
  t.cutoff = j.at("cutoff").get<double>();
  const auto& g = j.at("grid");
  t.grid = {g.at("radius").get<double>(), g.at("radial").get<int>(), g.at("angular").get<int>()};
  const auto& s = j.at("samples");
  if (s.size() != static_cast<std::size_t>(t.grid.size())) throw ArgumentError("sample count does not match grid");
  t.values.clear();
  for (const auto& row : s) t.values.emplace_back(row.at(2).get<double>(), row.at(3).get<double>());
}

}  // namespace nachman
