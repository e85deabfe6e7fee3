#pragma once

#include <vector>

#include "diskpack/packing.hpp"

namespace diskpack {

/// Mobius-invariant separation of two circles; 1 at external tangency,
/// 0 for orthogonal circles, > 1 for disjoint interiors.
double inversive_distance(const Vec2& p1, double r1, const Vec2& p2, double r2,
                          const LiftIndex& lift, const LatticeBasis& L);
double inversive_distance(const Packing& P, const Contact& c);

struct TriEdge {
  int i = 0;
  int j = 0;
  LiftIndex lift;
  bool diagonal = false;
};

struct FaceCorner {
  int v = 0;
  LiftIndex lift;  // copy of the universal cover the corner sits in
};

struct TriFace {
  FaceCorner a, b, c;
};

/// Completion of a contact graph to a triangulation, built in the universal
/// cover where loops and multi-edges become honest edges. Torus: 3n edges,
/// 2n faces. Tricusp: the three boundary circles join as fixed vertices
/// n..n+2 (3n+3 edges), and the outer face stays untriangulated.
struct Triangulation {
  int n = 0;             // disk vertices
  bool tricusp = false;  // +3 boundary vertices when set
  std::vector<TriEdge> edges;  // contact edges first, then added diagonals
  int n_contact_edges = 0;
  std::vector<TriFace> faces;

  int n_vertices() const { return tricusp ? n + 3 : n; }
  int n_diagonals() const { return static_cast<int>(edges.size()) - n_contact_edges; }
};

/// Fans every non-triangular face from the corner maximizing the minimum
/// face angle (ties to lexicographic corner order). Throws if the graph is
/// disconnected or its faces do not bound disks.
Triangulation complete_to_triangulation(const Packing& P, const ContactGraph& G);

/// Position of a vertex of the triangulation in the plane (boundary circle
/// centers for tricusp indices >= n).
Vec2 triangulation_vertex_position(const Packing& P, const Triangulation& T, int v);
double triangulation_vertex_radius(const Packing& P, const Triangulation& T, int v);

struct DimensionReport {
  int k = 0;
  int n = 0;
  int bound = 0;            // 3n - k
  int collective_slack = 0; // (3n - k) - (n + 1)
  bool isostatic_consistent = false;  // 3n - k == n + 1, i.e. k == 2n - 1
};

DimensionReport dimension_report(const Packing& P, const ContactGraph& G);

/// Inversive distance per triangulation edge, in edge order. Contact edges
/// must come out at 1 up to tolerance; a diagonal below 1 - 1e-8 means the
/// input was not a packing and raises an error.
std::vector<double> inversive_profile(const Packing& P, const Triangulation& T);

}  // namespace diskpack
