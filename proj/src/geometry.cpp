#include "diskpack/geometry.hpp"

#include <algorithm>

namespace diskpack {

double LatticeBasis::shortest_vector() const {
  // With 0 <= b < a the shortest vector has |z1| <= 2, |z2| <= 2.
  double best = std::numeric_limits<double>::infinity();
  for (int z1 = -2; z1 <= 2; ++z1) {
    for (int z2 = -2; z2 <= 2; ++z2) {
      if (z1 == 0 && z2 == 0) continue;
      best = std::min(best, lift_vector({z1, z2}).norm());
    }
  }
  return best;
}

namespace {

// One reduction pass. Returns the lift moving p into the fundamental domain
// according to fractional coordinates; (0,0) means p is already inside.
LiftIndex reduction_step(const Vec2& p, const LatticeBasis& L) {
  double v = p.y / L.c;
  double u = (p.x - v * L.b) / L.a;
  double fu = std::floor(u);
  double fv = std::floor(v);
  return {static_cast<int>(-fu), static_cast<int>(-fv)};
}

}  // namespace

std::pair<Vec2, LiftIndex> reduce_point_with_lift(const Vec2& p, const LatticeBasis& L) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw std::invalid_argument("reduce_point: non-finite input");
  }
  Vec2 q = p;
  LiftIndex total{0, 0};
  // Iterate to an exact fixpoint. Rounding at the domain boundary can require
  // a second pass; the loop terminates in practice after <= 2 iterations.
  for (int pass = 0; pass < 16; ++pass) {
    LiftIndex z = reduction_step(q, L);
    if (z.is_zero()) return {q, total};
    q += L.lift_vector(z);
    total.z1 += z.z1;
    total.z2 += z.z2;
  }
  // Pathological rounding; clamp fractional parts directly.
  double v = q.y / L.c;
  double u = (q.x - v * L.b) / L.a;
  u -= std::floor(u);
  v -= std::floor(v);
  if (u >= 1.0 || u < 0.0) u = 0.0;
  if (v >= 1.0 || v < 0.0) v = 0.0;
  return {u * L.v1() + v * L.v2(), total};
}

Vec2 reduce_point(const Vec2& p, const LatticeBasis& L) {
  return reduce_point_with_lift(p, L).first;
}

std::vector<Image> enumerate_images(const Vec2& p, const Vec2& q,
                                    const LatticeBasis& L, double cutoff,
                                    bool exclude_zero_lift) {
  Vec2 d0 = p - q;
  std::vector<Image> out;
  const double cut2 = cutoff * cutoff;
  // Exact index ranges: |d0.y + z2*c| <= cutoff fixes z2; for each z2 the x
  // component d0.x + z2*b + z1*a fixes z1. One index of slack guards rounding.
  int z2_lo = static_cast<int>(std::floor((-cutoff - d0.y) / L.c)) - 1;
  int z2_hi = static_cast<int>(std::ceil((cutoff - d0.y) / L.c)) + 1;
  for (int z2 = z2_lo; z2 <= z2_hi; ++z2) {
    double y = d0.y + z2 * L.c;
    if (std::abs(y) > cutoff) continue;
    double x0 = d0.x + z2 * L.b;
    int z1_lo = static_cast<int>(std::floor((-cutoff - x0) / L.a)) - 1;
    int z1_hi = static_cast<int>(std::ceil((cutoff - x0) / L.a)) + 1;
    for (int z1 = z1_lo; z1 <= z1_hi; ++z1) {
      if (exclude_zero_lift && z1 == 0 && z2 == 0) continue;
      Vec2 d{x0 + z1 * L.a, y};
      if (d.norm2() <= cut2) out.push_back({d, {z1, z2}});
    }
  }
  std::sort(out.begin(), out.end(), [](const Image& l, const Image& r) {
    double ln = l.d.norm2(), rn = r.d.norm2();
    if (ln != rn) return ln < rn;
    return l.lift < r.lift;
  });
  return out;
}

std::vector<Image> minimal_images(const Vec2& p, const Vec2& q,
                                  const LatticeBasis& L, double cutoff) {
  if (!(cutoff > 0.0)) throw std::invalid_argument("minimal_images: cutoff must be positive");
  if (cutoff > 3.0 * std::max(L.a, L.c)) {
    throw std::invalid_argument("minimal_images: cutoff exceeds enumeration guard 3*max(a,c)");
  }
  return enumerate_images(p, q, L, cutoff, p == q);
}

std::array<double, 3> TricuspContainer::clearances(const Vec2& p, double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("tricusp clearances: radius must be positive");
  std::array<double, 3> g{};
  auto cs = centers();
  for (int k = 0; k < 3; ++k) g[k] = (p - cs[k]).norm() - (R + r);
  return g;
}

double TricuspContainer::triangle_depth(const Vec2& p) const {
  const double s3 = std::sqrt(3.0);
  double d1 = p.y;
  double d2 = (s3 * p.x - p.y) / 2.0;
  double d3 = (s3 * (2.0 * R - p.x) - p.y) / 2.0;
  return std::min({d1, d2, d3});
}

}  // namespace diskpack
