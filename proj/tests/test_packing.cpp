#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "diskpack/packing.hpp"
#include "oracles.hpp"

using namespace diskpack;

namespace {

const double kPi = M_PI;

std::map<std::string, int> expected_contacts() {
  return {{"grid5", 10},      {"square1", 2},        {"triangular1", 3},
          {"heppes", 6},      {"stellar124", 9},     {"n3", 5},
          {"twodisk_slanted", 3}, {"twodisk_rect", 4}, {"soddy1", 3},
          {"tricusp4", 12}};
}

}  // namespace

TEST_CASE("catalog densities match closed forms") {
  CHECK(density(catalog("square1")) == doctest::Approx(kPi / 4.0).epsilon(1e-12));
  CHECK(density(catalog("grid5")) == doctest::Approx(kPi / 4.0).epsilon(1e-12));
  CHECK(density(catalog("triangular1")) ==
        doctest::Approx(kPi / std::sqrt(12.0)).epsilon(1e-12));
  CHECK(density(catalog("heppes")) ==
        doctest::Approx(kPi * (2.0 - std::sqrt(2.0)) / 2.0).epsilon(1e-12));
  CHECK(density(catalog("stellar124")) == doctest::Approx(7.0 * kPi / 24.0).epsilon(1e-12));
}

TEST_CASE("catalog entries validate and have the stated contact counts") {
  for (const auto& [name, k] : expected_contacts()) {
    Packing P = catalog(name);
    CAPTURE(name);
    CHECK(validate(P, 1e-9).ok());
    CHECK(validate(P, P.default_overlap_tol()).ok());
    ContactGraph G = detect_contacts(P, P.default_contact_tol());
    CHECK(static_cast<int>(G.contacts.size()) == k);
    for (const Contact& c : G.contacts) {
      CHECK(std::abs(c.gap) <= P.default_contact_tol());
    }
  }
  CHECK_THROWS_AS(catalog("no_such_packing"), std::invalid_argument);
}

TEST_CASE("grid5 geometry against the image oracle") {
  Packing P = catalog("grid5");
  const LatticeBasis& L = P.lattice();
  double target = 1.0 / std::sqrt(5.0);
  int count = 0;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      auto imgs = oracles::brute_images(P.centers[i], P.centers[j], L, target + 1e-12, false);
      REQUIRE(imgs.size() >= 1);
      CHECK(imgs[0].d.norm() == doctest::Approx(target).epsilon(1e-12));
      ++count;
    }
  }
  CHECK(count == 10);
}

TEST_CASE("single disk contact classes on the unit square") {
  Packing P = catalog("square1");
  ContactGraph G = detect_contacts(P, 1e-9);
  REQUIRE(G.contacts.size() == 2);
  CHECK(G.contacts[0].is_loop());
  CHECK(G.contacts[0].lift.lex_positive());
  CHECK(G.contacts[1].lift.lex_positive());
  bool has10 = false, has01 = false;
  for (const auto& c : G.contacts) {
    if (c.lift.z1 == 1 && c.lift.z2 == 0) has10 = true;
    if (c.lift.z1 == 0 && c.lift.z2 == 1) has01 = true;
  }
  CHECK(has10);
  CHECK(has01);
}

TEST_CASE("no contacts for distant disks") {
  Packing P(LatticeBasis(1, 0, 1), {{0.0, 0.0}, {0.5, 0.5}}, {0.1, 0.1});
  ContactGraph G = detect_contacts(P, 1e-9);
  CHECK(G.contacts.empty());
}

TEST_CASE("validate reports violations") {
  // Two unit disks at distance 1.9.
  Packing P(LatticeBasis(10, 0, 10), {{0.0, 0.0}, {1.9, 0.0}}, {1.0, 1.0});
  auto rep = validate(P, 1e-9);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].gap == doctest::Approx(-0.1).epsilon(1e-12));

  // Oversized single disk overlaps its own lattice images.
  Packing Q(LatticeBasis(1, 0, 1), {{0.0, 0.0}}, {0.6});
  auto rq = validate(Q, 1e-9);
  REQUIRE(rq.violations.size() == 2);
  for (const auto& v : rq.violations) {
    CHECK(v.i == 0);
    CHECK(v.j == 0);
    CHECK(v.gap == doctest::Approx(1.0 - 1.2).epsilon(1e-12));
  }

  CHECK(validate(catalog("grid5"), 1e-9).ok());
}

TEST_CASE("detect_contacts rejects gross overlap") {
  Packing P(LatticeBasis(10, 0, 10), {{0.0, 0.0}, {1.5, 0.0}}, {1.0, 1.0});
  CHECK_THROWS_AS(detect_contacts(P, 1e-9), std::runtime_error);
}

TEST_CASE("density is scale invariant") {
  Packing P = catalog("grid5");
  for (double s : {0.37, 2.0, 91.5}) {
    Packing Q = P.scaled(s);
    CHECK(density(Q) == doctest::Approx(density(P)).epsilon(1e-12));
    ContactGraph G = detect_contacts(Q, Q.default_contact_tol());
    CHECK(G.contacts.size() == 10);
  }
}

TEST_CASE("contacts survive translation by a lattice vector") {
  Packing P = catalog("n3");
  const LatticeBasis& L = P.lattice();
  std::vector<Vec2> cs = P.centers;
  for (Vec2& c : cs) c += L.lift_vector({2, -1});
  Packing Q(P.container, cs, P.radii);
  ContactGraph GP = detect_contacts(P, P.default_contact_tol());
  ContactGraph GQ = detect_contacts(Q, Q.default_contact_tol());
  CHECK(GP.contacts.size() == GQ.contacts.size());
  for (size_t i = 0; i < GP.contacts.size(); ++i) {
    CHECK(GP.contacts[i].i == GQ.contacts[i].i);
    CHECK(GP.contacts[i].j == GQ.contacts[i].j);
    CHECK(GP.contacts[i].lift.z1 == GQ.contacts[i].lift.z1);
    CHECK(GP.contacts[i].lift.z2 == GQ.contacts[i].lift.z2);
  }
}

TEST_CASE("contact multiset independent of disk ordering") {
  Packing P = catalog("stellar124");
  // Permute disks (2, 0, 1) and compare contact multisets under the map.
  std::vector<int> perm = {2, 0, 1};  // new index of old disk i is perm[i]
  std::vector<Vec2> cs(3);
  std::vector<double> rs(3);
  for (int i = 0; i < 3; ++i) {
    cs[perm[i]] = P.centers[i];
    rs[perm[i]] = P.radii[i];
  }
  Packing Q(P.container, cs, rs);
  ContactGraph GP = detect_contacts(P, P.default_contact_tol());
  ContactGraph GQ = detect_contacts(Q, Q.default_contact_tol());
  REQUIRE(GP.contacts.size() == GQ.contacts.size());
  // Count pair multiplicities under the permutation.
  std::map<std::pair<int, int>, int> mp, mq;
  for (const auto& c : GP.contacts) {
    int a = perm[c.i], b = perm[c.j];
    mp[{std::min(a, b), std::max(a, b)}]++;
  }
  for (const auto& c : GQ.contacts) {
    mq[{std::min(c.i, c.j), std::max(c.i, c.j)}]++;
  }
  CHECK(mp == mq);
}

TEST_CASE("packing construction guards") {
  CHECK_THROWS_AS(Packing(LatticeBasis(1, 0, 1), {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Packing(LatticeBasis(1, 0, 1), {{0, 0}}, {-0.5}), std::invalid_argument);
  CHECK_THROWS_AS(Packing(LatticeBasis(1, 0, 1), {{0, 0}}, {0.1, 0.2}), std::invalid_argument);
  // Torus centers are stored reduced.
  Packing P(LatticeBasis(1, 0, 1), {{1.75, -0.25}}, {0.1});
  CHECK(P.centers[0].x == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(P.centers[0].y == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("heppes tangency structure") {
  Packing P = catalog("heppes");
  ContactGraph G = detect_contacts(P, P.default_contact_tol());
  int loops = 0, cross = 0;
  for (const auto& c : G.contacts) {
    if (c.is_loop()) {
      ++loops;
      CHECK(c.i == 0);  // the large disk closes the grid in both directions
    } else {
      ++cross;
    }
  }
  CHECK(loops == 2);
  CHECK(cross == 4);
}
