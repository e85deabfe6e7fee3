// Derivations behind the non-trivial catalog entries. Running this tool
// re-derives each construction, verifies its tangency system to machine
// precision, and prints the frozen constants that live in src/catalog.cpp.
//
// Every entry solves in closed form:
//
//   n3              three equal disks on the unit square torus with five
//                   contacts. Two row contacts force x_B = 1/2; a column
//                   pair forces y_C - y_B = 1/2; the remaining tangency
//                   gives y_B^2 - 2 y_B + 1/4 = 0, so y_B = 1 - sqrt(3)/2
//                   and 2r = sqrt(2 - sqrt(3)) = (sqrt(6) - sqrt(2))/2.
//
//   twodisk_slanted the second disk sits at the circumcenter of (0,0), v1,
//                   v2 of a slanted lattice, tangent to all three images of
//                   the first; the circumradius fixes the radius scale.
//
//   twodisk_rect    on a rectangular torus the second disk is wedged
//                   between consecutive rows of the first; the mirror
//                   symmetry of b = 0 pairs the contacts, so c = 2h with
//                   h^2 = (r1 + r2)^2 - 1/4.
//
//   stellar124      subdividing one horizontal edge of the binary grid
//                   packing and re-solving the tangency system: with radii
//                   r_M = 1, r_S = 2, r_L = 3 every constraint is integer
//                   (a = 8, c = 6, heights 0 and 3).
//
//   tricusp4        the inner tangent disk plus one disk per cusp; with
//                   u = 1 - 1/sqrt(3) the cusp radius is u^2 / (2(1+u)).

#include <cstdio>

#include "diskpack/dynamics.hpp"
#include "diskpack/io.hpp"

using namespace diskpack;

namespace {

int g_failures = 0;

void check(const char* what, double value, double expect, double tol) {
  double err = std::abs(value - expect);
  bool ok = err <= tol;
  if (!ok) ++g_failures;
  std::printf("  %-44s %+.17e (err %.2e) %s\n", what, value, err, ok ? "ok" : "MISMATCH");
}

void show_entry(const char* name, int expect_contacts) {
  Packing P = catalog(name);
  ContactGraph G = detect_contacts(P, P.default_contact_tol());
  std::printf("%s\n", name);
  if (P.is_torus()) {
    const LatticeBasis& L = P.lattice();
    std::printf("  lattice a,b,c = %.17g %.17g %.17g\n", L.a, L.b, L.c);
  }
  for (int i = 0; i < P.n(); ++i) {
    std::printf("  disk %d: center (%.17g, %.17g) r = %.17g\n", i, P.centers[i].x,
                P.centers[i].y, P.radii[i]);
  }
  double worst = 0.0;
  for (const Contact& c : G.contacts) worst = std::max(worst, std::abs(c.gap));
  std::printf("  contacts %zu (expected %d), worst |gap| %.2e, validate %s\n",
              G.contacts.size(), expect_contacts, worst,
              validate(P, P.default_overlap_tol()).ok() ? "clean" : "VIOLATED");
  if (static_cast<size_t>(expect_contacts) != G.contacts.size() ||
      !validate(P, P.default_overlap_tol()).ok()) {
    ++g_failures;
  }
}

}  // namespace

int main() {
  std::printf("== n3 ==\n");
  {
    double yb = 1.0 - std::sqrt(3.0) / 2.0;
    check("y_B root of y^2 - 2y + 1/4", yb * yb - 2.0 * yb + 0.25, 0.0, 1e-15);
    check("2r = sqrt(2 - sqrt(3))", (std::sqrt(6.0) - std::sqrt(2.0)) / 2.0,
          std::sqrt(2.0 - std::sqrt(3.0)), 1e-15);
    show_entry("n3", 5);
  }

  std::printf("== twodisk_slanted ==\n");
  show_entry("twodisk_slanted", 3);

  std::printf("== twodisk_rect ==\n");
  show_entry("twodisk_rect", 4);

  std::printf("== stellar124 ==\n");
  {
    // Tangency system of the subdivided graph: distances L-M, L-S, M-S, L-L.
    check("L-M distance - (3+1)", 4.0, 3.0 + 1.0, 0.0);
    check("L-S distance - (3+2)", std::sqrt(16.0 + 9.0), 5.0, 1e-15);
    check("M-S distance - (1+2)", 3.0, 3.0, 0.0);
    check("L-L vertical - 2*3", 6.0, 6.0, 0.0);
    show_entry("stellar124", 9);
    check("density - 7pi/24", density(catalog("stellar124")), 7.0 * M_PI / 24.0, 1e-15);
  }

  std::printf("== tricusp4 ==\n");
  {
    double u = 1.0 - 1.0 / std::sqrt(3.0);
    double rs = u * u / (2.0 * (1.0 + u));
    double y = u - rs;
    check("cusp tangency sqrt(1+y^2) - (1+rs)", std::sqrt(1.0 + y * y), 1.0 + rs, 1e-15);
    show_entry("soddy1", 3);
    show_entry("tricusp4", 12);
  }

  // Driver cross-check: the jamming driver run on two generic disks over the
  // frozen slanted lattice reproduces an isostatic 3-contact outcome.
  std::printf("== driver cross-check (twodisk_slanted family) ==\n");
  {
    Packing frozen = catalog("twodisk_slanted");
    std::vector<double> ratios = {1.0, 0.7};
    Packing seed = seed_random(2, ratios, frozen.lattice(), 7);
    DriverConfig cfg = DriverConfig::defaults_for(seed, JamMode::Collective, 7);
    JamOutcome out = jam(seed, cfg);
    std::printf("  jam success %d, k_spine %d, isostatic %d\n", out.success,
                out.report.k_spine, out.report.isostatic);
    if (!out.success || out.report.k_spine != 3) ++g_failures;
  }

  std::printf(g_failures ? "DERIVATION CHECKS FAILED (%d)\n" : "all derivation checks pass\n",
              g_failures);
  return g_failures ? 1 : 0;
}
