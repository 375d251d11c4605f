#pragma once

// Interface-fitted quadratic (P2, isoparametric) triangulations of the unit
// disc built from concentric rings. Circles required by the conductivity are
// mesh rings, so jumps never cut through an element. Off-centre circular
// features are fitted by a smooth translation of the ring mesh that is rigid
// near the feature and the identity near the boundary.

#include <array>
#include <vector>

#include "nachman/conductivity.h"

namespace nachman {

struct MeshOptions {
  // Vertices on the unit circle; the tangential spacing everywhere is 2 pi / boundary_nodes.
  int boundary_nodes = 256;
  // Ring radii (before the translation map) that must appear exactly.
  std::vector<double> rings;
  // Rigid translation applied to the disc of radius rigid_radius.
  Point2 shift;
  double rigid_radius = 0.0;
};

struct FemMesh {
  std::vector<Point2> nodes;
  // Vertices 0..2 counter-clockwise, then edge midpoints (01, 12, 20).
  std::vector<std::array<int, 6>> triangles;
  std::vector<int> boundary_nodes;
  std::vector<double> boundary_angles;
  int vertex_count = 0;
  int boundary_vertex_count = 0;
  double h = 0.0;
};

FemMesh build_disc_mesh(const MeshOptions& options);

// Mesh fitted to every interface of sigma (plus any extra rings).
FemMesh mesh_for(const Conductivity& sigma, int boundary_nodes = 256,
                 const std::vector<double>& extra_rings = {});

// Maximum deviation of boundary nodes from |x| = 1.
double boundary_defect(const FemMesh& mesh);

// Sum of physical element areas (pi up to O(h^4) for the P2 disc).
double mesh_area(const FemMesh& mesh);

}  // namespace nachman
