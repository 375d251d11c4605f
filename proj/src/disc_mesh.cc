#include "nachman/disc_mesh.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "nachman/boundary_field.h"
#include "nachman/errors.h"
#include "p2_element.h"

namespace nachman {
namespace {

struct Ring {
  double radius;
  int count;
  int first;  // index of the first vertex
};

// Translation by `shift` for |x| <= r0, blended smoothly to the identity at r1.
struct ShiftMap {
  Point2 shift;
  double r0 = 0.0, r1 = 0.0;

  Point2 operator()(Point2 p) const {
    if (r1 <= 0.0) return p;
    const double r = std::hypot(p.x, p.y);
    const double chi = smooth_step((r1 - r) / (r1 - r0));
    return {p.x + chi * shift.x, p.y + chi * shift.y};
  }
};

std::vector<double> ring_radii(const MeshOptions& opt, double h) {
  std::vector<double> breaks = opt.rings;
  breaks.push_back(0.0);
  breaks.push_back(1.0);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               breaks.end());
  std::vector<double> radii;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s], b = breaks[s + 1];
    int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / h - 1e-9)));
    // Narrow bands between two fitted rings (ramps) get several element layers.
    if (s > 0 && s + 2 < breaks.size()) pieces = std::max(pieces, 4);
    for (int i = 1; i <= pieces; ++i) radii.push_back(a + (b - a) * i / pieces);
  }
  return radii;
}

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0 ? t + kTwoPi : t;
}

}  // namespace

FemMesh build_disc_mesh(const MeshOptions& opt) {
  if (opt.boundary_nodes < 12) throw ArgumentError("mesh needs at least 12 boundary nodes");
  for (double r : opt.rings)
    if (!(r > 0.0 && r < 1.0)) throw ArgumentError("mesh ring radii must lie in (0, 1)");

  ShiftMap map;
  const double shift = std::hypot(opt.shift.x, opt.shift.y);
  if (shift > 0.0) {
    map.shift = opt.shift;
    map.r0 = opt.rigid_radius + 0.02;
    // The blend stays injective while |shift| * max|chi'| < 1; max|chi'| = 2 / (r1 - r0).
    map.r1 = std::max(map.r0 + 2.5 * shift, 0.5 * (map.r0 + 0.97));
    if (map.r1 > 0.97 || opt.rigid_radius + shift >= 0.97)
      throw ArgumentError("off-centre feature too close to the boundary for a fitted mesh");
  }

  const double h = kTwoPi / opt.boundary_nodes;
  const std::vector<double> radii = ring_radii(opt, h);

  FemMesh mesh;
  mesh.h = h;
  std::vector<Point2> ref;  // reference (unshifted) vertex positions
  std::vector<int> ring_id;
  ref.push_back({0.0, 0.0});
  ring_id.push_back(-1);
  std::vector<Ring> rings;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    const bool outer = i + 1 == radii.size();
    const int count = outer ? opt.boundary_nodes : std::max(6, static_cast<int>(std::lround(kTwoPi * r / h)));
    rings.push_back({r, count, static_cast<int>(ref.size())});
    for (int j = 0; j < count; ++j) {
      const double t = kTwoPi * j / count;
      ref.push_back({r * std::cos(t), r * std::sin(t)});
      ring_id.push_back(static_cast<int>(i));
    }
  }

  std::vector<std::array<int, 3>> tris;
  auto add = [&](int a, int b, int c) {
    const Point2 &pa = ref[static_cast<std::size_t>(a)], &pb = ref[static_cast<std::size_t>(b)],
                 &pc = ref[static_cast<std::size_t>(c)];
    const double area = (pb.x - pa.x) * (pc.y - pa.y) - (pb.y - pa.y) * (pc.x - pa.x);
    if (area > 0)
      tris.push_back({a, b, c});
    else
      tris.push_back({a, c, b});
  };
  for (int j = 0; j < rings[0].count; ++j)
    add(0, rings[0].first + j, rings[0].first + (j + 1) % rings[0].count);
  for (std::size_t i = 0; i + 1 < rings.size(); ++i) {
    const Ring& in = rings[i];
    const Ring& out = rings[i + 1];
    int a = 0, b = 0;
    while (a < in.count || b < out.count) {
      const double ta = static_cast<double>(a + 1) / in.count;
      const double tb = static_cast<double>(b + 1) / out.count;
      const int ia = in.first + a % in.count, ib = out.first + b % out.count;
      if (b >= out.count || (a < in.count && ta < tb)) {
        add(ia, ib, in.first + (a + 1) % in.count);
        ++a;
      } else {
        add(ia, ib, out.first + (b + 1) % out.count);
        ++b;
      }
    }
  }

  mesh.vertex_count = static_cast<int>(ref.size());
  std::vector<Point2> ref_nodes = ref;
  std::vector<double> node_angle(ref.size(), -1.0);
  const int outer_ring = static_cast<int>(rings.size()) - 1;
  for (int j = 0; j < rings.back().count; ++j)
    node_angle[static_cast<std::size_t>(rings.back().first + j)] = kTwoPi * j / rings.back().count;

  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const Point2 pa = ref[static_cast<std::size_t>(a)], pb = ref[static_cast<std::size_t>(b)];
    Point2 m{0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)};
    double angle = -1.0;
    const int ra = ring_id[static_cast<std::size_t>(a)];
    if (ra >= 0 && ra == ring_id[static_cast<std::size_t>(b)]) {
      const double r = rings[static_cast<std::size_t>(ra)].radius;
      const double t0 = std::atan2(pa.y, pa.x);
      double dt = std::atan2(pb.y, pb.x) - t0;
      if (dt > kPi) dt -= kTwoPi;
      if (dt < -kPi) dt += kTwoPi;
      const double t = t0 + 0.5 * dt;
      m = {r * std::cos(t), r * std::sin(t)};
      if (ra == outer_ring) angle = wrap_angle(t);
    }
    const int id = static_cast<int>(ref_nodes.size());
    ref_nodes.push_back(m);
    node_angle.push_back(angle);
    midpoint.emplace(key, id);
    return id;
  };

  mesh.triangles.reserve(tris.size());
  for (const auto& t : tris) {
    const int m01 = mid(t[0], t[1]);
    const int m12 = mid(t[1], t[2]);
    const int m20 = mid(t[2], t[0]);
    mesh.triangles.push_back({t[0], t[1], t[2], m01, m12, m20});
  }

  mesh.nodes.reserve(ref_nodes.size());
  for (const auto& p : ref_nodes) mesh.nodes.push_back(map(p));
  for (std::size_t i = 0; i < node_angle.size(); ++i)
    if (node_angle[i] >= 0.0) {
      mesh.boundary_nodes.push_back(static_cast<int>(i));
      mesh.boundary_angles.push_back(node_angle[i]);
      // exact placement on the circle
      mesh.nodes[i] = {std::cos(node_angle[i]), std::sin(node_angle[i])};
    }
  mesh.boundary_vertex_count = rings.back().count;
  return mesh;
}

FemMesh mesh_for(const Conductivity& sigma, int boundary_nodes, const std::vector<double>& extra_rings) {
  MeshOptions opt;
  opt.boundary_nodes = boundary_nodes;
  opt.rings = sigma.interface_radii();
  const Point2 c = sigma.mesh_center();
  if (c.x != 0.0 || c.y != 0.0) {
    opt.shift = c;
    opt.rigid_radius = sigma.feature_radius();
  } else {
    opt.rings.insert(opt.rings.end(), extra_rings.begin(), extra_rings.end());
  }
  return build_disc_mesh(opt);
}

double boundary_defect(const FemMesh& mesh) {
  double worst = 0.0;
  for (int i : mesh.boundary_nodes) {
    const Point2& p = mesh.nodes[static_cast<std::size_t>(i)];
    worst = std::max(worst, std::abs(std::hypot(p.x, p.y) - 1.0));
  }
  return worst;
}

double mesh_area(const FemMesh& mesh) {
  double area = 0.0;
  for (const auto& tri : mesh.triangles)
    for (const auto& q : p2::quadrature()) area += q.weight * p2::map_point(mesh, tri, q.xi, q.eta).det;
  return area;
}

}  // namespace nachman
