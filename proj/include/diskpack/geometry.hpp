#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace diskpack {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double px, double py) : x(px), y(py) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }

  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }

  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// Integer lattice offset z1*v1 + z2*v2 selecting a representative of a
/// periodic displacement.
struct LiftIndex {
  int z1 = 0;
  int z2 = 0;

  bool operator==(const LiftIndex& o) const { return z1 == o.z1 && z2 == o.z2; }
  bool operator<(const LiftIndex& o) const {
    if (z1 != o.z1) return z1 < o.z1;
    return z2 < o.z2;
  }
  LiftIndex operator-() const { return {-z1, -z2}; }
  bool is_zero() const { return z1 == 0 && z2 == 0; }
  /// Lexicographically positive: canonical representative of the pair {z,-z}.
  bool lex_positive() const { return z1 > 0 || (z1 == 0 && z2 > 0); }
};

/// Torus lattice in canonical coordinates: basis vectors (a,0) and (b,c)
/// with a > 0, c > 0, and b stored reduced so 0 <= b < a.
struct LatticeBasis {
  double a = 1.0;
  double b = 0.0;
  double c = 1.0;

  LatticeBasis() = default;
  LatticeBasis(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
    if (!(a > 0.0) || !(c > 0.0) || !std::isfinite(a) || !std::isfinite(b) ||
        !std::isfinite(c)) {
      throw std::invalid_argument("LatticeBasis requires a > 0, c > 0, finite entries");
    }
    // normalize b into [0, a)
    if (b < 0.0 || b >= a) {
      b -= std::floor(b / a) * a;
      if (b >= a) b = 0.0;
    }
  }

  Vec2 v1() const { return {a, 0.0}; }
  Vec2 v2() const { return {b, c}; }
  double area() const { return a * c; }
  Vec2 lift_vector(const LiftIndex& z) const {
    return {z.z1 * a + z.z2 * b, z.z2 * c};
  }
  /// Length of the shortest nonzero lattice vector.
  double shortest_vector() const;

  bool operator==(const LatticeBasis& o) const {
    return a == o.a && b == o.b && c == o.c;
  }
};

/// Canonical representative of p modulo the lattice, in the half-open
/// fundamental parallelogram [0,1)*v1 + [0,1)*v2 (closed at 0, open at 1).
/// Exact fixpoint: a point already inside is returned unchanged, bit for bit.
Vec2 reduce_point(const Vec2& p, const LatticeBasis& L);

/// Same as reduce_point but also reports the total lift applied,
/// q = p + z1*v1 + z2*v2.
std::pair<Vec2, LiftIndex> reduce_point_with_lift(const Vec2& p, const LatticeBasis& L);

struct Image {
  Vec2 d;          // displacement p - q + z1*v1 + z2*v2
  LiftIndex lift;
};

/// All displacements d = p - q + z1*v1 + z2*v2 with |d| <= cutoff, sorted by
/// |d| then lexicographically by (z1, z2). For the self-pairing p == q the
/// zero lift is excluded. Rejects cutoff > 3*max(a, c).
std::vector<Image> minimal_images(const Vec2& p, const Vec2& q,
                                  const LatticeBasis& L, double cutoff);

/// Unguarded enumeration used internally (validate must never error out).
std::vector<Image> enumerate_images(const Vec2& p, const Vec2& q,
                                    const LatticeBasis& L, double cutoff,
                                    bool exclude_zero_lift);

/// The region between three mutually tangent unit circles. The container is
/// rigid up to similarity, so R is fixed at 1 internally; inputs are scaled.
/// Boundary circle centers sit at the corners of an equilateral triangle of
/// side 2R, anchored at (0,0), (2R,0), (R, sqrt(3)R).
struct TricuspContainer {
  double R = 1.0;

  std::array<Vec2, 3> centers() const {
    return {Vec2{0.0, 0.0}, Vec2{2.0 * R, 0.0}, Vec2{R, std::sqrt(3.0) * R}};
  }
  Vec2 centroid() const { return {R, R / std::sqrt(3.0)}; }
  double cusp_area() const { return (std::sqrt(3.0) - M_PI / 2.0) * R * R; }
  /// Radius of the inner disk tangent to all three boundary circles.
  double soddy_radius() const { return R * (2.0 / std::sqrt(3.0) - 1.0); }
  /// Signed gaps |p - c_k| - (R + r) against the three boundary circles.
  /// A disk is admissible iff all three are >= 0 and its center lies in the
  /// central region (the clearance condition alone is also met outside the
  /// container, beyond the cusp pinches).
  std::array<double, 3> clearances(const Vec2& p, double r) const;

  /// Signed distance of p to the triangle spanned by the boundary circle
  /// centers: positive inside. The cusp region is contained in that
  /// triangle, so any admissible disk center has a positive value.
  double triangle_depth(const Vec2& p) const;

  bool operator==(const TricuspContainer& o) const { return R == o.R; }
};

}  // namespace diskpack
