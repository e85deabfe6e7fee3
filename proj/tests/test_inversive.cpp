#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diskpack/inversive.hpp"

using namespace diskpack;

namespace {

Triangulation triangulate(const Packing& P) {
  ContactGraph G = detect_contacts(P, P.default_contact_tol());
  return complete_to_triangulation(P, G);
}

// Sum of lifted edge vectors around each triangle.
double worst_face_closure(const Packing& P, const Triangulation& T) {
  double worst = 0.0;
  const LatticeBasis* L = P.is_torus() ? &P.lattice() : nullptr;
  auto pos = [&](const FaceCorner& c) {
    Vec2 p = triangulation_vertex_position(P, T, c.v);
    if (L) p += L->lift_vector(c.lift);
    return p;
  };
  for (const TriFace& f : T.faces) {
    Vec2 s = (pos(f.b) - pos(f.a)) + (pos(f.c) - pos(f.b)) + (pos(f.a) - pos(f.c));
    worst = std::max(worst, s.norm());
  }
  return worst;
}

}  // namespace

TEST_CASE("inversive distance closed forms") {
  LatticeBasis unit(1, 0, 1);
  // Tangent circles: |d| = r1 + r2.
  CHECK(inversive_distance({0, 0}, 1.0, {3.0, 0.0}, 2.0, {0, 0}, unit) ==
        doctest::Approx(1.0).epsilon(1e-15));
  // Orthogonal circles: |d|^2 = r1^2 + r2^2.
  CHECK(inversive_distance({0, 0}, 1.0, {std::sqrt(5.0), 0.0}, 2.0, {0, 0}, unit) ==
        doctest::Approx(0.0).epsilon(1e-15));
  // Direct substitution.
  CHECK(inversive_distance({0, 0}, 1.0, {3.0, 0.0}, 1.0, {0, 0}, unit) ==
        doctest::Approx(3.5).epsilon(1e-15));
  CHECK_THROWS_AS(inversive_distance({0, 0}, -1.0, {1, 0}, 1.0, {0, 0}, unit),
                  std::invalid_argument);
}

TEST_CASE("triangulation counts per catalog entry") {
  struct Row {
    const char* name;
    int contacts;
    int diagonals;
  };
  // Torus identity: edges = 3n, diagonals = 3n - k.
  for (const Row& row : {Row{"triangular1", 3, 0}, Row{"square1", 2, 1},
                         Row{"grid5", 10, 5}, Row{"heppes", 6, 0},
                         Row{"stellar124", 9, 0}, Row{"n3", 5, 4},
                         Row{"twodisk_slanted", 3, 3}, Row{"twodisk_rect", 4, 2}}) {
    CAPTURE(row.name);
    Packing P = catalog(row.name);
    Triangulation T = triangulate(P);
    CHECK(T.n_contact_edges == row.contacts);
    CHECK(T.n_diagonals() == row.diagonals);
    CHECK(static_cast<int>(T.edges.size()) == 3 * P.n());
    CHECK(static_cast<int>(T.faces.size()) == 2 * P.n());
    CHECK(worst_face_closure(P, T) <= 1e-12);
  }
}

TEST_CASE("tricusp triangulation counts") {
  // Edges 3n + 3 with the boundary circles as fixed vertices.
  Packing soddy = catalog("soddy1");
  Triangulation Ts = triangulate(soddy);
  CHECK(static_cast<int>(Ts.edges.size()) == 6);
  CHECK(Ts.n_contact_edges == 6);  // 3 wall contacts + 3 boundary tangencies
  CHECK(Ts.n_diagonals() == 0);
  CHECK(static_cast<int>(Ts.faces.size()) == 3);

  Packing four = catalog("tricusp4");
  Triangulation Tf = triangulate(four);
  CHECK(static_cast<int>(Tf.edges.size()) == 15);
  CHECK(Tf.n_diagonals() == 0);
  CHECK(static_cast<int>(Tf.faces.size()) == 9);
  CHECK(worst_face_closure(four, Tf) <= 1e-12);
}

TEST_CASE("profile: contact edges at tangency, grid5 diagonals at 3") {
  Packing P = catalog("grid5");
  Triangulation T = triangulate(P);
  auto sigma = inversive_profile(P, T);
  REQUIRE(sigma.size() == T.edges.size());
  for (size_t e = 0; e < T.edges.size(); ++e) {
    if (T.edges[e].diagonal) {
      // Second-shortest grid vector: sigma = (0.4 - 0.1) / 0.1 = 3.
      CHECK(sigma[e] == doctest::Approx(3.0).epsilon(1e-9));
    } else {
      CHECK(sigma[e] == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("profile: every catalog contact edge is tangent") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    Packing P = catalog(name);
    Triangulation T = triangulate(P);
    auto sigma = inversive_profile(P, T);
    for (size_t e = 0; e < T.edges.size(); ++e) {
      if (!T.edges[e].diagonal) {
        CHECK(std::abs(sigma[e] - 1.0) <= 1e-8);
      } else {
        CHECK(sigma[e] > 1.0);
      }
    }
  }
}

TEST_CASE("profile is scale invariant") {
  Packing P = catalog("grid5");
  Packing Q = P.scaled(2.5);
  auto sp = inversive_profile(P, triangulate(P));
  auto sq = inversive_profile(Q, triangulate(Q));
  REQUIRE(sp.size() == sq.size());
  for (size_t i = 0; i < sp.size(); ++i) {
    CHECK(sp[i] == doctest::Approx(sq[i]).epsilon(1e-12));
  }
}

TEST_CASE("dimension report arithmetic") {
  Packing g5 = catalog("grid5");
  DimensionReport r = dimension_report(g5, detect_contacts(g5, g5.default_contact_tol()));
  CHECK(r.k == 10);
  CHECK(r.n == 5);
  CHECK(r.bound == 5);
  CHECK(r.collective_slack == -1);
  CHECK_FALSE(r.isostatic_consistent);

  Packing n3 = catalog("n3");
  DimensionReport r3 = dimension_report(n3, detect_contacts(n3, n3.default_contact_tol()));
  CHECK(r3.k == 5);
  CHECK(r3.bound == 4);
  CHECK(r3.collective_slack == 0);
  CHECK(r3.isostatic_consistent);

  Packing s1 = catalog("square1");
  DimensionReport r1 = dimension_report(s1, detect_contacts(s1, s1.default_contact_tol()));
  CHECK(r1.bound == 1);
  CHECK(r1.collective_slack == -1);
}

TEST_CASE("disconnected graphs are rejected") {
  Packing P(LatticeBasis(1, 0, 1), {{0.0, 0.0}, {0.5, 0.5}}, {0.1, 0.1});
  ContactGraph G = detect_contacts(P, P.default_contact_tol());
  CHECK_THROWS_AS(complete_to_triangulation(P, G), std::runtime_error);
}
