#include <cmath>

#include "diskpack/packing.hpp"

namespace diskpack {

namespace {

Packing make_grid5() {
  // Five equal disks on the unit square torus, centers on the sublattice
  // generated by (2/5, 1/5). All ten pairs sit at distance 1/sqrt(5).
  LatticeBasis L(1.0, 0.0, 1.0);
  std::vector<Vec2> cs;
  for (int k = 0; k < 5; ++k) cs.push_back(reduce_point({0.4 * k, 0.2 * k}, L));
  return Packing(L, cs, std::vector<double>(5, 0.5 / std::sqrt(5.0)));
}

Packing make_square1() {
  return Packing(LatticeBasis(1.0, 0.0, 1.0), {{0.0, 0.0}}, {0.5});
}

Packing make_triangular1() {
  return Packing(LatticeBasis(1.0, 0.5, std::sqrt(3.0) / 2.0), {{0.0, 0.0}}, {0.5});
}

Packing make_heppes() {
  // Binary packing with radius ratio sqrt(2)-1: large disks on a square grid
  // of spacing 2, small disks at the cell centers. Tangent along the grid
  // axes and the cell diagonals; the contact graph is a triangulation.
  const double r2 = std::sqrt(2.0) - 1.0;
  return Packing(LatticeBasis(2.0, 0.0, 2.0), {{0.0, 0.0}, {1.0, 1.0}}, {1.0, r2});
}

Packing make_stellar124() {
  // Subdividing one horizontal edge of the binary grid packing above and
  // re-solving the tangency system gives exact integer data: disks of radius
  // 3, 1, 2 on the lattice (8,0),(0,6). Nine contacts, already triangulated.
  return Packing(LatticeBasis(8.0, 0.0, 6.0),
                 {{0.0, 0.0}, {4.0, 0.0}, {4.0, 3.0}},
                 {3.0, 1.0, 2.0});
}

Packing make_n3() {
  // Three equal disks on the unit square torus with five contacts:
  // r = (sqrt(6)-sqrt(2))/4, all five tangencies exact in closed form.
  const double s3 = std::sqrt(3.0);
  const double r = (std::sqrt(6.0) - std::sqrt(2.0)) / 4.0;
  return Packing(LatticeBasis(1.0, 0.0, 1.0),
                 {{0.0, 0.0}, {0.5, 1.0 - s3 / 2.0}, {(s3 - 1.0) / 2.0, (3.0 - s3) / 2.0}},
                 {r, r, r});
}

Packing make_twodisk_slanted() {
  // Two disks of generic ratio jammed on a slanted lattice: the second disk
  // sits at the circumcenter of (0,0), v1, v2, tangent to all three images
  // of the first. Three contacts, isostatic.
  const double a = 2.1, b = 0.8, c = 1.9;
  const double ratio = 0.7;
  const double px = a / 2.0;
  const double py = (0.5 * (b * b + c * c) - b * px) / c;
  const double circ = std::sqrt(px * px + py * py);
  const double r1 = circ / (1.0 + ratio);
  return Packing(LatticeBasis(a, b, c), {{0.0, 0.0}, {px, py}}, {r1, ratio * r1});
}

Packing make_twodisk_rect() {
  // Rectangular torus tuned so two disks of generic ratio jam with four
  // contacts: the second disk is wedged symmetrically between consecutive
  // rows of the first (the mirror symmetry of b = 0 pairs the contacts).
  const double r1 = 0.45, r2 = 0.36;
  const double h = std::sqrt((r1 + r2) * (r1 + r2) - 0.25);
  return Packing(LatticeBasis(1.0, 0.0, 2.0 * h), {{0.0, 0.0}, {0.5, h}}, {r1, r2});
}

Packing make_soddy1() {
  TricuspContainer T;
  return Packing(T, {T.centroid()}, {T.soddy_radius()});
}

Packing make_tricusp4() {
  // The inner tangent disk plus one disk per cusp, each tangent to its two
  // boundary circles and to the central disk: 12 contacts for n = 4.
  TricuspContainer T;
  const double u = 1.0 - 1.0 / std::sqrt(3.0);
  const double rs = u * u / (2.0 * (1.0 + u));
  const double rc = T.soddy_radius();
  const double rho = rc + rs;  // distance of cusp-disk centers from the centroid
  Vec2 O = T.centroid();
  const double s3 = std::sqrt(3.0);
  std::vector<Vec2> cs = {
      O,
      O + Vec2{0.0, -rho},
      O + Vec2{s3 * rho / 2.0, rho / 2.0},
      O + Vec2{-s3 * rho / 2.0, rho / 2.0},
  };
  return Packing(T, cs, {rc, rs, rs, rs});
}

}  // namespace

Packing catalog(std::string_view name) {
  if (name == "grid5") return make_grid5();
  if (name == "square1") return make_square1();
  if (name == "triangular1") return make_triangular1();
  if (name == "heppes") return make_heppes();
  if (name == "stellar124") return make_stellar124();
  if (name == "n3") return make_n3();
  if (name == "twodisk_slanted") return make_twodisk_slanted();
  if (name == "twodisk_rect") return make_twodisk_rect();
  if (name == "soddy1") return make_soddy1();
  if (name == "tricusp4") return make_tricusp4();
  throw std::invalid_argument("catalog: unknown name '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() {
  return {"grid5",       "square1",        "triangular1", "heppes",
          "stellar124",  "n3",             "twodisk_slanted",
          "twodisk_rect", "soddy1",        "tricusp4"};
}

}  // namespace diskpack
