#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diskpack/rigidity.hpp"

using namespace diskpack;

namespace {

ContactGraph graph_of(const Packing& P) {
  return detect_contacts(P, P.default_contact_tol());
}

}  // namespace

TEST_CASE("grid5 rigidity matrix shape, rank and stress dimension") {
  Packing P = catalog("grid5");
  ContactGraph G = graph_of(P);
  RigidityMatrix R = build_rigidity_matrix(P, G, JamMode::Collective);
  CHECK(R.rows() == 10);
  CHECK(R.cols() == 8);

  RankResult rr = rank_and_nullspace(R.R);
  CHECK(rr.rank == 8);

  StressSpace ss = stress_space(R);
  CHECK(ss.dim == 2);
  CHECK(ss.max_residual <= 1e-8);

  JammingReport rep = test_collective_jamming(P, G);
  CHECK(rep.jammed);
  CHECK_FALSE(rep.isostatic);
  CHECK(rep.stress_dim == 2);
  CHECK(rep.k == 10);
  CHECK(rep.n == 5);
  CHECK(rep.bar_rank == 8);
  CHECK(rep.rattlers.empty());
  CHECK(rep.routes_agree);
  CHECK_FALSE(rep.ambiguous);
  // Count identity for jammed spines: s = k - (2n - 2), exact integers.
  CHECK(rep.stress_dim == rep.k_spine - (2 * rep.n_spine - 2));
}

TEST_CASE("single disk on the square torus: loops only") {
  Packing P = catalog("square1");
  ContactGraph G = graph_of(P);
  RigidityMatrix R = build_rigidity_matrix(P, G, JamMode::Collective);
  CHECK(R.rows() == 2);
  CHECK(R.cols() == 0);
  // Loop rows vanish at fixed lattice.
  StressSpace ss = stress_space(R);
  CHECK(ss.dim == 2);

  JammingReport rep = test_collective_jamming(P, G);
  CHECK(rep.jammed);
  CHECK(rep.stress_dim == 2);

  // Strict mode: loop rows pick up lattice entries.
  RigidityMatrix Rs = build_rigidity_matrix(P, G, JamMode::Strict);
  CHECK(Rs.rows() == 2);
  CHECK(Rs.cols() == 3);
  int nonzero_rows = 0;
  for (int r = 0; r < 2; ++r) {
    if (Rs.R.row(r).cwiseAbs().maxCoeff() > 0.5) ++nonzero_rows;
  }
  CHECK(nonzero_rows == 2);
}

TEST_CASE("square torus is not strictly jammed: shear flex witness") {
  Packing P = catalog("square1");
  ContactGraph G = graph_of(P);
  JammingReport rep = test_strict_jamming(P, G);
  CHECK_FALSE(rep.jammed);
  CHECK(rep.routes_agree);
  REQUIRE(rep.witness_flex.has_value());
  // Columns are (adot, bdot, cdot); the flex is the pure shear.
  const DenseVector& w = *rep.witness_flex;
  REQUIRE(w.size() == 3);
  CHECK(std::abs(w(1)) > 0.9 * w.cwiseAbs().maxCoeff());
}

TEST_CASE("triangular lattice is strictly jammed and isostatic") {
  Packing P = catalog("triangular1");
  ContactGraph G = graph_of(P);

  JammingReport col = test_collective_jamming(P, G);
  CHECK(col.jammed);
  CHECK(col.k == 3);
  CHECK(col.stress_dim == 3);

  JammingReport rep = test_strict_jamming(P, G);
  CHECK(rep.jammed);
  CHECK(rep.isostatic);
  CHECK(rep.k_spine == 3);          // 2n + 1 with n = 1
  CHECK(rep.stress_dim == 1);       // area row included
  CHECK(rep.bar_rank == 3);
  CHECK(rep.routes_agree);
  REQUIRE(rep.witness_stress.has_value());
  // All contact stresses strictly negative, area multiplier included.
  for (int i = 0; i < rep.witness_stress->size(); ++i) {
    CHECK((*rep.witness_stress)(i) < 0.0);
  }
}

TEST_CASE("heppes packing is strictly jammed") {
  Packing P = catalog("heppes");
  ContactGraph G = graph_of(P);
  JammingReport rep = test_strict_jamming(P, G);
  CHECK(rep.jammed);
  CHECK(rep.routes_agree);
  CHECK(rep.k == 6);
  CHECK_FALSE(rep.isostatic);  // k = 6 > 2n + 1 = 5

  JammingReport col = test_collective_jamming(P, G);
  CHECK(col.jammed);
  CHECK(col.stress_dim == 4);  // 6 - (2*2 - 2)
}

TEST_CASE("isostatic catalog packings") {
  for (const char* name : {"n3", "twodisk_slanted"}) {
    CAPTURE(name);
    Packing P = catalog(name);
    ContactGraph G = graph_of(P);
    JammingReport rep = test_collective_jamming(P, G);
    CHECK(rep.jammed);
    CHECK(rep.isostatic);
    CHECK(rep.stress_dim == 1);
    CHECK(rep.k_spine == 2 * rep.n_spine - 1);
    CHECK(rep.routes_agree);
  }
}

TEST_CASE("rectangular two-disk packing: jammed but not isostatic") {
  Packing P = catalog("twodisk_rect");
  ContactGraph G = graph_of(P);
  JammingReport rep = test_collective_jamming(P, G);
  CHECK(rep.jammed);
  CHECK_FALSE(rep.isostatic);
  CHECK(rep.k == 4);
  CHECK(rep.stress_dim == 2);
  CHECK(rep.routes_agree);
}

TEST_CASE("tricusp verdicts") {
  Packing soddy = catalog("soddy1");
  ContactGraph Gs = graph_of(soddy);
  JammingReport rs = test_tricusp_jamming(soddy, Gs);
  CHECK(rs.jammed);
  CHECK(rs.isostatic);
  CHECK(rs.k == 3);
  CHECK(rs.bar_rank == 2);
  CHECK(rs.routes_agree);

  Packing four = catalog("tricusp4");
  ContactGraph Gf = graph_of(four);
  JammingReport rf = test_tricusp_jamming(four, Gf);
  CHECK(rf.jammed);
  CHECK_FALSE(rf.isostatic);
  CHECK(rf.k == 12);
  CHECK(rf.bar_rank == 8);
  CHECK(rf.stress_dim == 4);
  CHECK(rf.routes_agree);

  // Below the inner tangent radius nothing holds the disk.
  TricuspContainer T;
  Packing loose(T, {T.centroid()}, {0.9 * T.soddy_radius()});
  ContactGraph Gl = graph_of(loose);
  JammingReport rl = test_tricusp_jamming(loose, Gl);
  CHECK_FALSE(rl.jammed);
  CHECK(rl.witness_flex.has_value());
}

TEST_CASE("contact-free disks are not jammed") {
  Packing P(LatticeBasis(1, 0, 1), {{0.0, 0.0}, {0.37, 0.61}}, {0.1, 0.1});
  ContactGraph G = graph_of(P);
  JammingReport rep = test_collective_jamming(P, G);
  CHECK_FALSE(rep.jammed);
  CHECK(rep.n_spine == 0);
  CHECK(rep.rattlers.size() == 2);
  CHECK(rep.witness_flex.has_value());
}

TEST_CASE("isolated disk added to grid5 becomes the only rattler") {
  Packing g5 = catalog("grid5");
  std::vector<Vec2> cs = g5.centers;
  std::vector<double> rs = g5.radii;
  cs.push_back({0.9, 0.65});
  rs.push_back(0.02);
  Packing P(g5.container, cs, rs);
  ContactGraph G = graph_of(P);
  auto [spine, rattlers] = extract_spine(P, G, JamMode::Collective);
  CHECK(spine.size() == 5);
  REQUIRE(rattlers.size() == 1);
  CHECK(rattlers[0] == 5);

  JammingReport rep = test_collective_jamming(P, G);
  CHECK(rep.jammed);
  CHECK(rep.n_spine == 5);
  CHECK(rep.k_spine == 10);
}

TEST_CASE("verdicts are invariant under uniform rescaling") {
  Packing P = catalog("grid5").scaled(3.7);
  ContactGraph G = graph_of(P);
  JammingReport rep = test_collective_jamming(P, G);
  CHECK(rep.jammed);
  CHECK(rep.bar_rank == 8);
  CHECK(rep.stress_dim == 2);
  CHECK_FALSE(rep.isostatic);
}

TEST_CASE("stress equilibrium residuals on catalog entries") {
  for (const char* name : {"grid5", "n3", "heppes", "stellar124", "twodisk_slanted"}) {
    CAPTURE(name);
    Packing P = catalog(name);
    ContactGraph G = graph_of(P);
    RigidityMatrix R = build_rigidity_matrix(P, G, JamMode::Collective);
    StressSpace ss = stress_space(R);
    CHECK(ss.max_residual <= 1e-8);
  }
}

TEST_CASE("certificate and flex routes agree on every catalog entry") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    Packing P = catalog(name);
    ContactGraph G = graph_of(P);
    if (P.is_torus()) {
      CHECK(test_collective_jamming(P, G).routes_agree);
      CHECK(test_strict_jamming(P, G).routes_agree);
    } else {
      CHECK(test_tricusp_jamming(P, G).routes_agree);
    }
  }
}

TEST_CASE("near-degenerate packing is flagged ambiguous") {
  // Four disks on a minutely sheared square grid: the shear flex leaves a
  // singular value of order b, inside the guard band around the rank cutoff.
  const double b = 1e-14;
  LatticeBasis L(1.0, b, 1.0);
  Packing P(L, {{0.0, 0.0}, {0.5, 0.0}, {b / 2.0, 0.5}, {0.5 + b / 2.0, 0.5}},
            {0.25, 0.25, 0.25, 0.25});
  ContactGraph G = graph_of(P);
  CHECK(G.contacts.size() == 8);
  JammingReport rep = test_collective_jamming(P, G);
  CHECK(rep.ambiguous);
}
