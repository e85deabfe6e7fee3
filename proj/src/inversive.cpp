#include "diskpack/inversive.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace diskpack {

double inversive_distance(const Vec2& p1, double r1, const Vec2& p2, double r2,
                          const LiftIndex& lift, const LatticeBasis& L) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) {
    throw std::invalid_argument("inversive_distance: radii must be positive");
  }
  Vec2 d = p1 - p2 + L.lift_vector(lift);
  return (d.norm2() - (r1 * r1 + r2 * r2)) / (2.0 * r1 * r2);
}

double inversive_distance(const Packing& P, const Contact& c) {
  if (c.is_wall()) {
    const TricuspContainer& T = P.tricusp();
    Vec2 d = P.centers[c.i] - T.centers()[c.boundary - 1];
    double r1 = P.radii[c.i], r2 = T.R;
    return (d.norm2() - (r1 * r1 + r2 * r2)) / (2.0 * r1 * r2);
  }
  Vec2 d = contact_edge_vector(P, c);
  double r1 = P.radii[c.i], r2 = P.radii[c.j];
  return (d.norm2() - (r1 * r1 + r2 * r2)) / (2.0 * r1 * r2);
}

namespace {

// A dart is an oriented edge instance in the universal cover. `to_copy` is
// the lattice copy the head lands in, relative to the tail's copy.
struct Dart {
  int from = 0;
  int to = 0;
  LiftIndex to_copy;
  Vec2 dir;
  int edge = 0;  // index into the edge list
};

struct GraphEdge {
  int i, j;
  LiftIndex lift;  // e = pos_i - pos_j + lift (torus only)
};

struct TracedFace {
  std::vector<FaceCorner> corners;  // ccw
  std::vector<Vec2> pos;            // lifted corner positions
};

struct PlaneGraph {
  int nv = 0;
  std::vector<Vec2> pos;
  std::vector<GraphEdge> edges;
  const LatticeBasis* L = nullptr;  // null for the tricusp (plane) case

  Vec2 lift_vec(const LiftIndex& z) const {
    return L ? L->lift_vector(z) : Vec2{0.0, 0.0};
  }
};

std::vector<TracedFace> trace_faces(const PlaneGraph& g) {
  const int ne = static_cast<int>(g.edges.size());
  std::vector<Dart> darts(2 * ne);
  for (int e = 0; e < ne; ++e) {
    const GraphEdge& ed = g.edges[e];
    Vec2 ev = g.pos[ed.i] - g.pos[ed.j] + g.lift_vec(ed.lift);
    darts[2 * e] = {ed.i, ed.j, -ed.lift, -ev, e};
    darts[2 * e + 1] = {ed.j, ed.i, ed.lift, ev, e};
  }

  // Rotation system: darts out of each vertex in counterclockwise order.
  std::vector<std::vector<int>> rot(g.nv);
  for (int d = 0; d < 2 * ne; ++d) rot[darts[d].from].push_back(d);
  std::vector<int> pos_in_rot(2 * ne, -1);
  for (int v = 0; v < g.nv; ++v) {
    std::sort(rot[v].begin(), rot[v].end(), [&](int l, int r) {
      double al = std::atan2(darts[l].dir.y, darts[l].dir.x);
      double ar = std::atan2(darts[r].dir.y, darts[r].dir.x);
      if (al != ar) return al < ar;
      return l < r;
    });
    for (size_t k = 0; k < rot[v].size(); ++k) pos_in_rot[rot[v][k]] = static_cast<int>(k);
  }

  // Walk faces keeping the interior on the left: after dart d, continue with
  // the dart before d's reverse in the rotation at the head vertex.
  auto next_dart = [&](int d) {
    int twin = d ^ 1;
    int v = darts[d].to;
    int deg = static_cast<int>(rot[v].size());
    int p = pos_in_rot[twin];
    return rot[v][(p - 1 + deg) % deg];
  };

  std::vector<char> seen(2 * ne, 0);
  std::vector<TracedFace> faces;
  for (int d0 = 0; d0 < 2 * ne; ++d0) {
    if (seen[d0]) continue;
    TracedFace f;
    LiftIndex acc{0, 0};
    int d = d0;
    int guard = 0;
    do {
      if (++guard > 4 * ne + 8) {
        throw std::runtime_error("triangulation: face walk did not close");
      }
      seen[d] = 1;
      f.corners.push_back({darts[d].from, acc});
      f.pos.push_back(g.pos[darts[d].from] + g.lift_vec(acc));
      acc.z1 += darts[d].to_copy.z1;
      acc.z2 += darts[d].to_copy.z2;
      d = next_dart(d);
    } while (d != d0);
    if (!acc.is_zero()) {
      throw std::runtime_error("triangulation: face is not a disk (nonzero winding)");
    }
    faces.push_back(std::move(f));
  }
  return faces;
}

double corner_angle(const Vec2& at, const Vec2& u, const Vec2& w) {
  Vec2 a = u - at, b = w - at;
  double la = a.norm(), lb = b.norm();
  if (la == 0.0 || lb == 0.0) return 0.0;
  double c = std::clamp(a.dot(b) / (la * lb), -1.0, 1.0);
  return std::acos(c);
}

// Fan quality: the minimum angle over the fan's triangles, or -1 when some
// triangle is degenerate or wrongly oriented.
double fan_min_angle(const std::vector<Vec2>& q, int apex, double area_eps) {
  const int m = static_cast<int>(q.size());
  double best = M_PI;
  for (int s = 1; s + 1 < m; ++s) {
    const Vec2& A = q[apex];
    const Vec2& B = q[(apex + s) % m];
    const Vec2& C = q[(apex + s + 1) % m];
    double area2 = (B - A).cross(C - A);
    if (area2 <= area_eps) return -1.0;
    best = std::min({best, corner_angle(A, B, C), corner_angle(B, C, A),
                     corner_angle(C, A, B)});
  }
  return best;
}

TriEdge canonical_edge(int i, int j, LiftIndex lift, bool diagonal) {
  if (i > j) {
    std::swap(i, j);
    lift = -lift;
  }
  if (i == j && !lift.lex_positive()) lift = -lift;
  return {i, j, lift, diagonal};
}

bool edge_less(const TriEdge& a, const TriEdge& b) {
  if (a.i != b.i) return a.i < b.i;
  if (a.j != b.j) return a.j < b.j;
  if (!(a.lift == b.lift)) return a.lift < b.lift;
  return false;
}

void check_connected(const ContactGraph& G, int extra_vertices) {
  int nv = G.n + extra_vertices;
  if (nv <= 1) return;
  std::vector<std::vector<int>> adj(nv);
  for (const Contact& c : G.contacts) {
    if (c.is_wall()) {
      int w = G.n + c.boundary - 1;
      adj[c.i].push_back(w);
      adj[w].push_back(c.i);
    } else if (c.i != c.j) {
      adj[c.i].push_back(c.j);
      adj[c.j].push_back(c.i);
    }
  }
  if (extra_vertices == 3) {
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        adj[G.n + a].push_back(G.n + b);
        adj[G.n + b].push_back(G.n + a);
      }
    }
  }
  std::vector<char> vis(nv, 0);
  std::vector<int> stack{0};
  vis[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!vis[w]) {
        vis[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  if (count != nv) {
    throw std::runtime_error("triangulation: contact graph is disconnected");
  }
}

}  // namespace

Triangulation complete_to_triangulation(const Packing& P, const ContactGraph& G) {
  Triangulation T;
  T.n = P.n();
  T.tricusp = !P.is_torus();
  check_connected(G, T.tricusp ? 3 : 0);

  PlaneGraph g;
  g.nv = T.n_vertices();
  g.pos.assign(P.centers.begin(), P.centers.end());
  if (T.tricusp) {
    auto ws = P.tricusp().centers();
    g.pos.insert(g.pos.end(), ws.begin(), ws.end());
  } else {
    g.L = &P.lattice();
  }

  for (const Contact& c : G.contacts) {
    if (c.is_wall()) {
      g.edges.push_back({c.i, T.n + c.boundary - 1, {0, 0}});
      T.edges.push_back(canonical_edge(c.i, T.n + c.boundary - 1, {0, 0}, false));
    } else {
      g.edges.push_back({c.i, c.j, c.lift});
      T.edges.push_back(canonical_edge(c.i, c.j, c.lift, false));
    }
  }
  if (T.tricusp) {
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        g.edges.push_back({T.n + a, T.n + b, {0, 0}});
        T.edges.push_back(canonical_edge(T.n + a, T.n + b, {0, 0}, false));
      }
    }
  }
  T.n_contact_edges = static_cast<int>(T.edges.size());

  auto faces = trace_faces(g);

  // Scale for orientation/degeneracy thresholds.
  double scale = 0.0;
  for (double r : P.radii) scale = std::max(scale, r);
  const double area_eps = 1e-12 * scale * scale;

  std::vector<TriEdge> diagonals;
  std::set<std::tuple<int, int, int, int>> diag_seen;

  for (const TracedFace& f : faces) {
    const int m = static_cast<int>(f.corners.size());
    if (m < 3) throw std::runtime_error("triangulation: degenerate face");
    if (T.tricusp) {
      double area2 = 0.0;
      for (int s = 0; s < m; ++s) area2 += f.pos[s].cross(f.pos[(s + 1) % m]);
      if (area2 < 0.0) continue;  // outer face of the plane graph stays open
    }
    if (m == 3) {
      T.faces.push_back({f.corners[0], f.corners[1], f.corners[2]});
      continue;
    }
    int best_apex = -1;
    double best_angle = -1.0;
    for (int a = 0; a < m; ++a) {
      double q = fan_min_angle(f.pos, a, area_eps);
      if (q < 0.0) continue;
      bool better = q > best_angle + 1e-12;
      bool tie = std::abs(q - best_angle) <= 1e-12;
      if (better ||
          (tie && best_apex >= 0 &&
           std::make_tuple(f.corners[a].v, f.corners[a].lift.z1, f.corners[a].lift.z2) <
               std::make_tuple(f.corners[best_apex].v, f.corners[best_apex].lift.z1,
                               f.corners[best_apex].lift.z2))) {
        best_angle = q;
        best_apex = a;
      }
    }
    if (best_apex < 0) {
      throw std::runtime_error("triangulation: no admissible fan for a face");
    }
    for (int s = 1; s + 1 < m; ++s) {
      T.faces.push_back({f.corners[best_apex], f.corners[(best_apex + s) % m],
                         f.corners[(best_apex + s + 1) % m]});
    }
    for (int s = 2; s + 1 < m; ++s) {
      const FaceCorner& A = f.corners[best_apex];
      const FaceCorner& B = f.corners[(best_apex + s) % m];
      LiftIndex rel{A.lift.z1 - B.lift.z1, A.lift.z2 - B.lift.z2};
      TriEdge d = canonical_edge(A.v, B.v, rel, true);
      auto key = std::make_tuple(d.i, d.j, d.lift.z1, d.lift.z2);
      if (!diag_seen.insert(key).second) {
        throw std::runtime_error("triangulation: duplicate diagonal (internal error)");
      }
      diagonals.push_back(d);
    }
  }

  std::sort(diagonals.begin(), diagonals.end(), edge_less);
  T.edges.insert(T.edges.end(), diagonals.begin(), diagonals.end());

  // Count identities are exact integers; violation means a malformed input.
  const int expect_edges = T.tricusp ? 3 * T.n + 3 : 3 * T.n;
  if (static_cast<int>(T.edges.size()) != expect_edges) {
    throw std::runtime_error("triangulation: edge count off (input not a packing graph?)");
  }
  const int expect_faces = T.tricusp ? 2 * T.n + 1 : 2 * T.n;
  if (static_cast<int>(T.faces.size()) != expect_faces) {
    throw std::runtime_error("triangulation: face count off (input not a packing graph?)");
  }
  return T;
}

Vec2 triangulation_vertex_position(const Packing& P, const Triangulation& T, int v) {
  if (v < T.n) return P.centers[v];
  return P.tricusp().centers()[v - T.n];
}

double triangulation_vertex_radius(const Packing& P, const Triangulation& T, int v) {
  if (v < T.n) return P.radii[v];
  return P.tricusp().R;
}

DimensionReport dimension_report(const Packing& P, const ContactGraph& G) {
  DimensionReport r;
  r.k = static_cast<int>(G.contacts.size());
  r.n = P.n();
  r.bound = 3 * r.n - r.k;
  r.collective_slack = r.bound - (r.n + 1);
  r.isostatic_consistent = (r.k == 2 * r.n - 1);
  return r;
}

std::vector<double> inversive_profile(const Packing& P, const Triangulation& T) {
  std::vector<double> sigma;
  sigma.reserve(T.edges.size());
  for (const TriEdge& e : T.edges) {
    Vec2 pi = triangulation_vertex_position(P, T, e.i);
    Vec2 pj = triangulation_vertex_position(P, T, e.j);
    double ri = triangulation_vertex_radius(P, T, e.i);
    double rj = triangulation_vertex_radius(P, T, e.j);
    Vec2 d = pi - pj;
    if (!T.tricusp) d += P.lattice().lift_vector(e.lift);
    double s = (d.norm2() - (ri * ri + rj * rj)) / (2.0 * ri * rj);
    if (e.diagonal && s < 1.0 - 1e-8) {
      throw std::runtime_error("inversive_profile: diagonal below tangency (overlap)");
    }
    sigma.push_back(s);
  }
  return sigma;
}

}  // namespace diskpack
