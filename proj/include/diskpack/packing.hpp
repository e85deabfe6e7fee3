#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "diskpack/geometry.hpp"

namespace diskpack {

using Container = std::variant<LatticeBasis, TricuspContainer>;

/// A disk packing: a container plus n centers and n positive radii.
/// Torus centers are stored reduced to the fundamental domain; generated
/// torus packings keep center 1 at the origin (translations are quotiented
/// out by that convention).
struct Packing {
  Container container;
  std::vector<Vec2> centers;
  std::vector<double> radii;

  Packing() = default;
  Packing(Container cont, std::vector<Vec2> cs, std::vector<double> rs);

  int n() const { return static_cast<int>(centers.size()); }
  bool is_torus() const { return std::holds_alternative<LatticeBasis>(container); }
  const LatticeBasis& lattice() const { return std::get<LatticeBasis>(container); }
  const TricuspContainer& tricusp() const { return std::get<TricuspContainer>(container); }

  double container_area() const;
  double geometric_mean_radius() const;
  double min_radius() const;

  /// Default tolerance scale: contact detection at 1e-8 and overlap at 1e-9
  /// times the geometric mean radius; jamming drivers converge gaps well
  /// below the former and real gaps sit well above it.
  double default_contact_tol() const { return 1e-8 * geometric_mean_radius(); }
  double default_overlap_tol() const { return 1e-9 * geometric_mean_radius(); }

  /// Uniformly rescaled copy (lattice, centers, radii all scaled by s).
  Packing scaled(double s) const;
};

/// A touching pair. For loops (i == j, torus) the lift is stored
/// z-lexicographically positive. Wall contacts in the tricusp carry
/// boundary = 1..3 and the identity lift.
struct Contact {
  int i = 0;
  int j = 0;
  LiftIndex lift;
  int boundary = 0;  // 0 = disk-disk, 1..3 = tricusp wall index
  double gap = 0.0;  // distance - (r_i + r_j), or clearance for walls

  bool is_loop() const { return boundary == 0 && i == j; }
  bool is_wall() const { return boundary != 0; }
};

struct ContactGraph {
  int n = 0;
  double tol = 0.0;  // contact tolerance the graph was detected at
  std::vector<Contact> contacts;
  std::vector<std::vector<int>> incident;  // contact ids per vertex

  /// Incident contact count with loops counting once per contact row.
  int degree(int v) const { return static_cast<int>(incident[v].size()); }
  /// Incident non-loop contacts (loops impose no constraint on the vertex
  /// when the lattice is fixed).
  int degree_nonloop(int v) const;
};

double density(const Packing& P);

/// Contact edge vector e = p_i - p_j + z1*v1 + z2*v2 (unit length r_i + r_j
/// at exact tangency). For wall contacts, p_i - c_k.
Vec2 contact_edge_vector(const Packing& P, const Contact& c);

/// Every pair/lift (and tricusp wall) with |gap| <= contact_tol, ordered by
/// (i, j, boundary, lift). Throws if some gap < -10*contact_tol, which means
/// the input is not a packing at this tolerance.
ContactGraph detect_contacts(const Packing& P, double contact_tol);

struct Violation {
  int i = 0, j = 0;
  LiftIndex lift;
  int boundary = 0;
  double gap = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Lists every pair/lift violating the packing condition by more than
/// overlap_tol. Never throws on geometric input.
ValidationReport validate(const Packing& P, double overlap_tol);

/// Named packings with frozen exact coordinates. See tools/derive_catalog.cpp
/// for the constructions behind the derived entries.
Packing catalog(std::string_view name);
std::vector<std::string> catalog_names();

}  // namespace diskpack
