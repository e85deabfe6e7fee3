#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diskpack/geometry.hpp"
#include "oracles.hpp"

using namespace diskpack;

TEST_CASE("lattice basis canonical form") {
  LatticeBasis L(1.0, 0.0, 1.0);
  CHECK(L.area() == 1.0);
  CHECK(LatticeBasis(2.0, 0.7, 0.5).area() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(LatticeBasis(1.0, 0.5, std::sqrt(3.0) / 2.0).area() ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));

  // b is stored reduced into [0, a)
  LatticeBasis W(2.0, -0.5, 1.0);
  CHECK(W.b == doctest::Approx(1.5));
  LatticeBasis W2(2.0, 4.25, 1.0);
  CHECK(W2.b == doctest::Approx(0.25));

  CHECK_THROWS_AS(LatticeBasis(0.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(LatticeBasis(1.0, 0.0, -2.0), std::invalid_argument);
}

TEST_CASE("reduce_point examples") {
  LatticeBasis unit(1.0, 0.0, 1.0);
  Vec2 q = reduce_point({1.3, 0.2}, unit);
  CHECK(q.x == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(q.y == doctest::Approx(0.2).epsilon(1e-12));

  Vec2 z = reduce_point({0.0, 0.0}, unit);
  CHECK(z.x == 0.0);
  CHECK(z.y == 0.0);

  // Derived case, checked against the exhaustive oracle.
  LatticeBasis L(1.0, 0.5, 1.0);
  Vec2 p{-0.25, 1.5};
  Vec2 r = reduce_point(p, L);
  Vec2 expect = oracles::brute_reduce(p, L);
  CHECK(r.x == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.y == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.x == doctest::Approx(expect.x).epsilon(1e-12));
  CHECK(r.y == doctest::Approx(expect.y).epsilon(1e-12));
}

TEST_CASE("reduce_point is exactly idempotent") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    LatticeBasis L(0.2 + 2.0 * oracles::urand(rng), 2.0 * oracles::urand(rng) - 1.0,
                   0.2 + 2.0 * oracles::urand(rng));
    Vec2 p{20.0 * oracles::urand(rng) - 10.0, 20.0 * oracles::urand(rng) - 10.0};
    Vec2 q = reduce_point(p, L);
    Vec2 q2 = reduce_point(q, L);
    CHECK(q.x == q2.x);
    CHECK(q.y == q2.y);
  }
}

TEST_CASE("reduce_point lift bookkeeping") {
  LatticeBasis L(1.3, 0.4, 0.9);
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    Vec2 p{10.0 * oracles::urand(rng) - 5.0, 10.0 * oracles::urand(rng) - 5.0};
    auto [q, z] = reduce_point_with_lift(p, L);
    Vec2 back = p + L.lift_vector(z);
    CHECK(back.x == doctest::Approx(q.x).epsilon(1e-12));
    CHECK(back.y == doctest::Approx(q.y).epsilon(1e-12));
  }
}

TEST_CASE("minimal_images unit lattice neighbors") {
  LatticeBasis unit(1.0, 0.0, 1.0);
  auto imgs = minimal_images({0.0, 0.0}, {0.0, 0.0}, unit, 1.05);
  REQUIRE(imgs.size() == 4);
  for (const auto& im : imgs) {
    CHECK(im.d.norm() == doctest::Approx(1.0));
    CHECK((std::abs(im.lift.z1) + std::abs(im.lift.z2)) == 1);
  }
}

TEST_CASE("minimal_images wraparound") {
  LatticeBasis unit(1.0, 0.0, 1.0);
  auto imgs = minimal_images({0.2, 0.0}, {0.9, 0.0}, unit, 0.5);
  REQUIRE(imgs.size() == 1);
  CHECK(imgs[0].d.x == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(imgs[0].d.y == doctest::Approx(0.0));
  CHECK(imgs[0].lift.z1 == 1);
  CHECK(imgs[0].lift.z2 == 0);
}

TEST_CASE("minimal_images triangular lattice coordination") {
  LatticeBasis tri(1.0, 0.5, std::sqrt(3.0) / 2.0);
  auto imgs = minimal_images({0.0, 0.0}, {0.0, 0.0}, tri, 1.01);
  auto brute = oracles::brute_images({0, 0}, {0, 0}, tri, 1.01, true, 2);
  REQUIRE(imgs.size() == 6);
  REQUIRE(brute.size() == 6);
  for (const auto& im : imgs) CHECK(im.d.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("minimal_images guard and negation symmetry") {
  LatticeBasis L(1.0, 0.3, 0.8);
  CHECK_THROWS_AS(minimal_images({0, 0}, {0.5, 0.5}, L, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(minimal_images({0, 0}, {0.5, 0.5}, L, -1.0), std::invalid_argument);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    Vec2 p = reduce_point({oracles::urand(rng), oracles::urand(rng)}, L);
    Vec2 q = reduce_point({oracles::urand(rng), oracles::urand(rng)}, L);
    double cutoff = 0.3 + oracles::urand(rng);
    auto fw = minimal_images(p, q, L, cutoff);
    auto bw = minimal_images(q, p, L, cutoff);
    REQUIRE(fw.size() == bw.size());
    for (size_t i = 0; i < fw.size(); ++i) {
      // Same multiset: the reversed list contains the negated image.
      bool found = false;
      for (size_t j = 0; j < bw.size(); ++j) {
        if (bw[j].lift.z1 == -fw[i].lift.z1 && bw[j].lift.z2 == -fw[i].lift.z2 &&
            bw[j].d.x == -fw[i].d.x && bw[j].d.y == -fw[i].d.y) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("minimal_images agrees with the brute-force oracle") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 1000; ++t) {
    LatticeBasis L(0.4 + 1.2 * oracles::urand(rng), 1.6 * oracles::urand(rng) - 0.8,
                   0.4 + 1.2 * oracles::urand(rng));
    bool self = (t % 3 == 0);
    Vec2 p = reduce_point({2.0 * oracles::urand(rng), 2.0 * oracles::urand(rng)}, L);
    Vec2 q = self ? p : reduce_point({2.0 * oracles::urand(rng), 2.0 * oracles::urand(rng)}, L);
    double cutoff = (0.2 + oracles::urand(rng)) * std::min(L.a, L.c);
    auto mine = minimal_images(p, q, L, cutoff);
    auto brute = oracles::brute_images(p, q, L, cutoff, self, 5);
    REQUIRE(mine.size() == brute.size());
    for (size_t i = 0; i < mine.size(); ++i) {
      CHECK(mine[i].lift.z1 == brute[i].lift.z1);
      CHECK(mine[i].lift.z2 == brute[i].lift.z2);
    }
  }
}

TEST_CASE("tricusp clearances") {
  TricuspContainer T;
  double rs = T.soddy_radius();
  CHECK(rs == doctest::Approx(oracles::descartes_inner_radius()).epsilon(1e-14));

  auto g = T.clearances(T.centroid(), rs);
  for (double v : g) CHECK(v == doctest::Approx(0.0).epsilon(1e-14));

  auto g2 = T.clearances(T.centroid(), 1e-12);
  for (double v : g2) {
    CHECK(v == doctest::Approx(2.0 / std::sqrt(3.0) - 1.0).epsilon(1e-9));
  }

  auto g3 = T.clearances(T.centers()[0], 0.25);
  CHECK(g3[0] == doctest::Approx(-(1.0 + 0.25)).epsilon(1e-14));

  CHECK(T.cusp_area() == doctest::Approx(std::sqrt(3.0) - M_PI / 2.0).epsilon(1e-15));
}
