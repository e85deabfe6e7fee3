#include "diskpack/packing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace diskpack {

Packing::Packing(Container cont, std::vector<Vec2> cs, std::vector<double> rs)
    : container(std::move(cont)), centers(std::move(cs)), radii(std::move(rs)) {
  if (centers.empty()) throw std::invalid_argument("Packing: need at least one disk");
  if (centers.size() != radii.size()) {
    throw std::invalid_argument("Packing: centers/radii size mismatch");
  }
  for (double r : radii) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("Packing: radii must be positive and finite");
    }
  }
  for (const Vec2& p : centers) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("Packing: non-finite center");
    }
  }
  if (is_torus()) {
    const LatticeBasis& L = lattice();
    for (Vec2& p : centers) p = reduce_point(p, L);
  } else {
    if (tricusp().R != 1.0) {
      throw std::invalid_argument("Packing: tricusp container is fixed at R = 1; scale inputs");
    }
  }
}

double Packing::container_area() const {
  if (is_torus()) return lattice().area();
  return tricusp().cusp_area();
}

double Packing::geometric_mean_radius() const {
  double s = 0.0;
  for (double r : radii) s += std::log(r);
  return std::exp(s / static_cast<double>(radii.size()));
}

double Packing::min_radius() const {
  return *std::min_element(radii.begin(), radii.end());
}

Packing Packing::scaled(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("Packing::scaled: s must be positive");
  if (!is_torus()) throw std::invalid_argument("Packing::scaled: tricusp is fixed at R = 1");
  const LatticeBasis& L = lattice();
  std::vector<Vec2> cs;
  cs.reserve(centers.size());
  for (const Vec2& p : centers) cs.push_back(p * s);
  std::vector<double> rs;
  rs.reserve(radii.size());
  for (double r : radii) rs.push_back(r * s);
  return Packing(LatticeBasis(L.a * s, L.b * s, L.c * s), std::move(cs), std::move(rs));
}

int ContactGraph::degree_nonloop(int v) const {
  int d = 0;
  for (int id : incident[v]) {
    if (!contacts[id].is_loop()) ++d;
  }
  return d;
}

double density(const Packing& P) {
  double s = 0.0;
  for (double r : P.radii) s += r * r;
  return M_PI * s / P.container_area();
}

Vec2 contact_edge_vector(const Packing& P, const Contact& c) {
  if (c.is_wall()) {
    return P.centers[c.i] - P.tricusp().centers()[c.boundary - 1];
  }
  Vec2 d = P.centers[c.i] - P.centers[c.j];
  if (P.is_torus()) d += P.lattice().lift_vector(c.lift);
  return d;
}

namespace {

void sort_contacts(std::vector<Contact>& cs) {
  std::sort(cs.begin(), cs.end(), [](const Contact& l, const Contact& r) {
    if (l.i != r.i) return l.i < r.i;
    if (l.j != r.j) return l.j < r.j;
    if (l.boundary != r.boundary) return l.boundary < r.boundary;
    return l.lift < r.lift;
  });
}

// Shared pair/lift scan for detect_contacts and validate. Emits every image
// with gap <= keep_tol in canonical orientation (i <= j; loops lex-positive).
template <typename F>
void scan_pairs(const Packing& P, double keep_tol, F&& emit) {
  const int n = P.n();
  if (P.is_torus()) {
    const LatticeBasis& L = P.lattice();
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        double rsum = P.radii[i] + P.radii[j];
        auto images = enumerate_images(P.centers[i], P.centers[j], L,
                                       rsum + keep_tol, i == j);
        for (const Image& im : images) {
          if (i == j && !im.lift.lex_positive()) continue;  // one of each +/- pair
          double gap = im.d.norm() - rsum;
          emit(Contact{i, j, im.lift, 0, gap});
        }
      }
    }
  } else {
    const TricuspContainer& T = P.tricusp();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        double rsum = P.radii[i] + P.radii[j];
        double gap = (P.centers[i] - P.centers[j]).norm() - rsum;
        if (gap <= keep_tol) emit(Contact{i, j, {0, 0}, 0, gap});
      }
      auto cl = T.clearances(P.centers[i], P.radii[i]);
      for (int k = 0; k < 3; ++k) {
        if (cl[k] <= keep_tol) emit(Contact{i, i, {0, 0}, k + 1, cl[k]});
      }
    }
  }
}

}  // namespace

ContactGraph detect_contacts(const Packing& P, double contact_tol) {
  if (contact_tol < 0.0) throw std::invalid_argument("detect_contacts: negative tolerance");
  ContactGraph G;
  G.n = P.n();
  G.tol = contact_tol;
  std::vector<Contact> bad;
  scan_pairs(P, contact_tol, [&](const Contact& c) {
    if (c.gap < -10.0 * contact_tol) {
      bad.push_back(c);
    } else if (std::abs(c.gap) <= contact_tol) {
      G.contacts.push_back(c);
    }
  });
  if (!bad.empty()) {
    std::ostringstream os;
    os << "detect_contacts: overlap violation, " << bad.size()
       << " pair(s) with gap < -10*tol; worst gap " << bad.front().gap;
    throw std::runtime_error(os.str());
  }
  sort_contacts(G.contacts);
  G.incident.assign(G.n, {});
  for (int id = 0; id < static_cast<int>(G.contacts.size()); ++id) {
    const Contact& c = G.contacts[id];
    G.incident[c.i].push_back(id);
    if (c.j != c.i) G.incident[c.j].push_back(id);
  }
  return G;
}

ValidationReport validate(const Packing& P, double overlap_tol) {
  ValidationReport rep;
  scan_pairs(P, -overlap_tol, [&](const Contact& c) {
    if (c.gap < -overlap_tol) {
      rep.violations.push_back({c.i, c.j, c.lift, c.boundary, c.gap});
    }
  });
  if (!P.is_torus()) {
    // Centers must sit in the central region; the clearance condition alone
    // is also satisfied outside the container. Reported with boundary = -1.
    const TricuspContainer& T = P.tricusp();
    for (int i = 0; i < P.n(); ++i) {
      double depth = T.triangle_depth(P.centers[i]);
      if (depth < -overlap_tol) {
        rep.violations.push_back({i, i, {0, 0}, -1, depth});
      }
    }
  }
  return rep;
}

}  // namespace diskpack
