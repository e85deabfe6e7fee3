#include "diskpack/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace diskpack {

namespace {

constexpr int kMaxHalvings = 40;
constexpr int kJiggleEscalations = 8;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_pm(std::mt19937_64& rng) { return 2.0 * uniform01(rng) - 1.0; }

struct NearPair {
  Contact c;   // gap filled with the current value
  Vec2 u;      // unit edge vector
};

// Every pair/lift (and wall) within `reach` of contact.
std::vector<NearPair> near_pairs(const Packing& P, double reach, double growth_frac) {
  std::vector<NearPair> out;
  const int n = P.n();
  if (P.is_torus()) {
    const LatticeBasis& L = P.lattice();
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        double rsum = P.radii[i] + P.radii[j];
        double cutoff = rsum * (1.0 + growth_frac) + reach;
        auto images = enumerate_images(P.centers[i], P.centers[j], L, cutoff, i == j);
        for (const Image& im : images) {
          if (i == j && !im.lift.lex_positive()) continue;
          double len = im.d.norm();
          NearPair np;
          np.c = Contact{i, j, im.lift, 0, len - rsum};
          np.u = {im.d.x / len, im.d.y / len};
          out.push_back(np);
        }
      }
    }
  } else {
    const TricuspContainer& T = P.tricusp();
    auto walls = T.centers();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        double rsum = P.radii[i] + P.radii[j];
        Vec2 d = P.centers[i] - P.centers[j];
        double len = d.norm();
        if (len <= rsum * (1.0 + growth_frac) + reach) {
          out.push_back({Contact{i, j, {0, 0}, 0, len - rsum}, {d.x / len, d.y / len}});
        }
      }
      for (int k = 0; k < 3; ++k) {
        Vec2 d = P.centers[i] - walls[k];
        double len = d.norm();
        double rsum = T.R + P.radii[i];
        if (len <= rsum * (1.0 + growth_frac) + reach) {
          out.push_back({Contact{i, i, {0, 0}, k + 1, len - rsum}, {d.x / len, d.y / len}});
        }
      }
    }
  }
  return out;
}

Packing apply_motion(const Packing& P, const std::vector<Vec2>& disp, double alpha,
                     double growth, const LatticeBasis* new_lattice) {
  std::vector<Vec2> cs = P.centers;
  for (int i = 0; i < P.n(); ++i) cs[i] += disp[i] * alpha;
  std::vector<double> rs = P.radii;
  for (double& r : rs) r *= (1.0 + alpha * growth);
  Container cont = P.container;
  if (new_lattice) cont = *new_lattice;
  return Packing(std::move(cont), std::move(cs), std::move(rs));
}

}  // namespace

DriverConfig DriverConfig::defaults_for(const Packing& P, JamMode mode, std::uint64_t seed) {
  DriverConfig cfg;
  cfg.mode = mode;
  double mr = P.min_radius();
  cfg.activation = 0.4 * mr;
  cfg.step_cap = 0.05 * mr;
  cfg.jiggle = 0.01 * mr;
  cfg.seed = seed;
  return cfg;
}

void DriverConfig::check() const {
  if (!(activation > 0.0) || !(step_cap > 0.0) || !(jiggle > 0.0) ||
      !(t_threshold > 0.0) || max_outer <= 0 || sd_interval <= 0) {
    throw std::invalid_argument("DriverConfig: all knobs must be positive");
  }
}

StepResult danzer_step(const Packing& P, const DriverConfig& cfg) {
  cfg.check();
  const int n = P.n();
  const bool torus = P.is_torus();
  const double t_cap = 0.5;

  auto pairs = near_pairs(P, cfg.activation, t_cap);

  // Variables: displacements (first disk pinned on the torus) then the
  // uniform growth rate t.
  const int pin = torus ? 0 : -1;
  std::vector<int> col(n, -1);
  int nc = 0;
  for (int i = 0; i < n; ++i) {
    if (i == pin) continue;
    col[i] = nc;
    nc += 2;
  }
  const int tcol = nc;
  LinearProgram lp = LinearProgram::make(nc + 1);
  for (int j = 0; j < nc; ++j) {
    lp.lo(j) = -cfg.step_cap;
    lp.hi(j) = cfg.step_cap;
  }
  lp.lo(tcol) = 0.0;
  lp.hi(tcol) = t_cap;
  lp.objective(tcol) = 1.0;

  lp.A = DenseMatrix::Zero(static_cast<int>(pairs.size()), nc + 1);
  lp.b = DenseVector::Zero(static_cast<int>(pairs.size()));
  for (int r = 0; r < static_cast<int>(pairs.size()); ++r) {
    const NearPair& np = pairs[r];
    double rsum = np.c.is_wall() ? (P.tricusp().R + P.radii[np.c.i])
                                 : (P.radii[np.c.i] + P.radii[np.c.j]);
    // u.(d_i - d_j) >= t*growth_len - gap, where only the disk radii grow.
    // Loops have d_i - d_j identically zero: they bound t alone.
    double growth_len = np.c.is_wall() ? P.radii[np.c.i] : rsum;
    if (!np.c.is_loop()) {
      if (col[np.c.i] >= 0) {
        lp.A(r, col[np.c.i]) -= np.u.x;
        lp.A(r, col[np.c.i] + 1) -= np.u.y;
      }
      if (!np.c.is_wall() && col[np.c.j] >= 0) {
        lp.A(r, col[np.c.j]) += np.u.x;
        lp.A(r, col[np.c.j] + 1) += np.u.y;
      }
    }
    lp.A(r, tcol) = growth_len;
    // Valid packings have gap >= -overlap_tol; clamping at zero keeps the
    // zero motion feasible without letting the LP harvest the tolerance.
    lp.b(r) = std::max(np.c.gap, 0.0);
  }

  LPResult res = solve_lp(lp);
  if (res.status != LPStatus::Optimal) {
    throw std::runtime_error("danzer_step: LP not optimal (tolerance fault)");
  }

  std::vector<Vec2> disp(n, Vec2{0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    if (col[i] >= 0) disp[i] = {res.x(col[i]), res.x(col[i] + 1)};
  }
  double t = std::max(0.0, res.x(tcol));

  double alpha = 1.0;
  for (int h = 0; h < kMaxHalvings; ++h) {
    Packing cand = apply_motion(P, disp, alpha, t, nullptr);
    if (validate(cand, P.default_overlap_tol()).ok()) {
      return {std::move(cand), alpha * t};
    }
    alpha *= 0.5;
  }
  return {P, 0.0};
}

Packing swinnerton_dyer_step(const Packing& P, const DriverConfig& cfg) {
  cfg.check();
  if (!P.is_torus()) throw std::invalid_argument("swinnerton_dyer_step: torus only");
  const int n = P.n();
  const LatticeBasis& L = P.lattice();

  auto pairs = near_pairs(P, cfg.activation, 0.0);

  std::vector<int> col(n, -1);
  int nc = 0;
  for (int i = 1; i < n; ++i) {
    col[i] = nc;
    nc += 2;
  }
  const int la = nc, lb = nc + 1, lc = nc + 2;
  LinearProgram lp = LinearProgram::make(nc + 3);
  for (int j = 0; j < nc + 3; ++j) {
    lp.lo(j) = -cfg.step_cap;
    lp.hi(j) = cfg.step_cap;
  }
  lp.lo(lc) = -std::min(cfg.step_cap, 0.5 * L.c);  // keep c positive
  // maximize the area decrease -(c*adot + a*cdot)
  lp.objective(la) = -L.c;
  lp.objective(lc) = -L.a;

  lp.A = DenseMatrix::Zero(static_cast<int>(pairs.size()), nc + 3);
  lp.b = DenseVector::Zero(static_cast<int>(pairs.size()));
  for (int r = 0; r < static_cast<int>(pairs.size()); ++r) {
    const NearPair& np = pairs[r];
    if (!np.c.is_loop()) {
      if (col[np.c.i] >= 0) {
        lp.A(r, col[np.c.i]) -= np.u.x;
        lp.A(r, col[np.c.i] + 1) -= np.u.y;
      }
      if (col[np.c.j] >= 0) {
        lp.A(r, col[np.c.j]) += np.u.x;
        lp.A(r, col[np.c.j] + 1) += np.u.y;
      }
    }
    lp.A(r, la) -= np.u.x * np.c.lift.z1;
    lp.A(r, lb) -= np.u.x * np.c.lift.z2;
    lp.A(r, lc) -= np.u.y * np.c.lift.z2;
    lp.b(r) = std::max(np.c.gap, 0.0);
  }

  LPResult res = solve_lp(lp);
  if (res.status != LPStatus::Optimal) {
    throw std::runtime_error("swinnerton_dyer_step: LP not optimal (tolerance fault)");
  }
  if (res.value <= 1e-13 * (L.a + L.c)) return P;  // stationary

  std::vector<Vec2> disp(n, Vec2{0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    if (col[i] >= 0) disp[i] = {res.x(col[i]), res.x(col[i] + 1)};
  }
  double da = res.x(la), db = res.x(lb), dc = res.x(lc);

  double alpha = 1.0;
  for (int h = 0; h < kMaxHalvings; ++h) {
    LatticeBasis L2(L.a + alpha * da, L.b + alpha * db, L.c + alpha * dc);
    Packing cand = apply_motion(P, disp, alpha, 0.0, &L2);
    if (L2.area() <= L.area() * (1.0 + 1e-12) &&
        validate(cand, P.default_overlap_tol()).ok()) {
      return cand;
    }
    alpha *= 0.5;
  }
  return P;
}

Packing thurston_step(const Packing& P, const DriverConfig& cfg) {
  cfg.check();
  const int n = P.n();
  const double cap_r = 0.5 * cfg.activation;
  const double floor_r = 1e-9 * P.geometric_mean_radius();

  Packing cur = P;
  for (int pass = 0; pass < 200; ++pass) {
    auto pairs = near_pairs(cur, 2.0 * cap_r, 0.0);
    LinearProgram lp = LinearProgram::make(n);
    for (int i = 0; i < n; ++i) {
      lp.objective(i) = cur.radii[i];
      lp.lo(i) = floor_r;
      lp.hi(i) = cur.radii[i] + cap_r;
    }
    lp.A = DenseMatrix::Zero(static_cast<int>(pairs.size()), n);
    lp.b = DenseVector::Zero(static_cast<int>(pairs.size()));
    for (int r = 0; r < static_cast<int>(pairs.size()); ++r) {
      const NearPair& np = pairs[r];
      double dist = np.c.gap + (np.c.is_wall() ? (cur.tricusp().R + cur.radii[np.c.i])
                                               : (cur.radii[np.c.i] + cur.radii[np.c.j]));
      if (np.c.is_wall()) {
        lp.A(r, np.c.i) = 1.0;
        lp.b(r) = dist - cur.tricusp().R;
      } else if (np.c.is_loop()) {
        lp.A(r, np.c.i) = 2.0;
        lp.b(r) = dist;
      } else {
        lp.A(r, np.c.i) += 1.0;
        lp.A(r, np.c.j) += 1.0;
        lp.b(r) = dist;
      }
    }
    LPResult res = solve_lp(lp);
    if (res.status != LPStatus::Optimal) {
      throw std::runtime_error("thurston_step: LP not optimal");
    }
    double f_old = 0.0, f_new = 0.0;
    for (int i = 0; i < n; ++i) {
      f_old += cur.radii[i] * cur.radii[i];
      f_new += res.x(i) * res.x(i);
    }
    if (f_new <= f_old * (1.0 + 1e-14)) return cur;
    std::vector<double> rs(n);
    for (int i = 0; i < n; ++i) rs[i] = res.x(i);
    Packing cand(cur.container, cur.centers, rs);
    if (!validate(cand, P.default_overlap_tol()).ok()) return cur;
    cur = std::move(cand);
  }
  return cur;
}

namespace {

Packing apply_jiggle(const Packing& P, const DriverConfig& cfg, double amp,
                     std::mt19937_64& rng) {
  const int n = P.n();
  const bool torus = P.is_torus();
  std::vector<Vec2> disp(n, Vec2{0.0, 0.0});
  for (int i = (torus ? 1 : 0); i < n; ++i) {
    disp[i] = {amp * uniform_pm(rng), amp * uniform_pm(rng)};
  }
  double da = 0.0, db = 0.0, dc = 0.0;
  if (cfg.mode == JamMode::Strict) {
    da = amp * uniform_pm(rng);
    db = amp * uniform_pm(rng);
    dc = amp * uniform_pm(rng);
  }
  double alpha = 1.0;
  for (int h = 0; h < kMaxHalvings; ++h) {
    const LatticeBasis* Lp = nullptr;
    LatticeBasis L2;
    if (cfg.mode == JamMode::Strict) {
      const LatticeBasis& L = P.lattice();
      L2 = LatticeBasis(std::max(L.a + alpha * da, 0.5 * L.a), L.b + alpha * db,
                        std::max(L.c + alpha * dc, 0.5 * L.c));
      Lp = &L2;
    }
    Packing cand = apply_motion(P, disp, alpha, 0.0, Lp);
    if (validate(cand, P.default_overlap_tol()).ok()) return cand;
    alpha *= 0.5;
  }
  return P;
}

}  // namespace

JamOutcome jam(const Packing& seed, const DriverConfig& cfg) {
  cfg.check();
  if (!validate(seed, seed.default_overlap_tol()).ok()) {
    throw std::invalid_argument("jam: seed is not a valid packing");
  }
  if (cfg.mode == JamMode::Tricusp && seed.is_torus()) {
    throw std::invalid_argument("jam: tricusp mode requires a tricusp container");
  }
  if (cfg.mode != JamMode::Tricusp && !seed.is_torus()) {
    throw std::invalid_argument("jam: torus modes require a torus container");
  }

  std::mt19937_64 rng(cfg.seed);
  JamOutcome out;
  out.packing = seed;
  const double r0 = seed.radii[0];
  double sd_rate = (cfg.mode == JamMode::Strict) ? 1.0 : 0.0;
  int escalations = 0;

  for (int iter = 0; iter < cfg.max_outer; ++iter) {
    StepResult st = danzer_step(out.packing, cfg);
    out.packing = std::move(st.packing);

    if (cfg.mode == JamMode::Strict && iter % cfg.sd_interval == cfg.sd_interval - 1) {
      double a0 = out.packing.lattice().area();
      out.packing = swinnerton_dyer_step(out.packing, cfg);
      sd_rate = (a0 - out.packing.lattice().area()) / a0;
    }

    ContactGraph G = detect_contacts(out.packing, out.packing.default_contact_tol());
    out.trajectory.rows.push_back({iter, out.packing.radii[0] / r0,
                                   density(out.packing),
                                   static_cast<int>(G.contacts.size())});

    bool converged = st.t_star < cfg.t_threshold &&
                     (cfg.mode != JamMode::Strict || sd_rate < cfg.t_threshold);
    if (!converged) continue;

    out.report = test_jamming(out.packing, G, cfg.mode);
    if (out.report.jammed && !out.report.ambiguous) {
      out.success = true;
      out.trajectory.termination = "jammed";
      return out;
    }
    if (escalations >= kJiggleEscalations) {
      out.success = false;
      out.trajectory.termination = "stalled";
      return out;
    }
    double amp = cfg.jiggle * std::pow(0.5, escalations);
    ++escalations;
    out.packing = apply_jiggle(out.packing, cfg, amp, rng);
    if (cfg.mode == JamMode::Strict) sd_rate = 1.0;  // forces a fresh convergence check
  }

  ContactGraph G = detect_contacts(out.packing, out.packing.default_contact_tol());
  out.report = test_jamming(out.packing, G, cfg.mode);
  out.success = out.report.jammed && !out.report.ambiguous;
  out.trajectory.termination = out.success ? "jammed" : "iteration cap";
  return out;
}

Packing seed_random(int n, const std::vector<double>& ratios, const Container& container,
                    std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("seed_random: n must be >= 1");
  if (static_cast<int>(ratios.size()) != n) {
    throw std::invalid_argument("seed_random: need one ratio per disk");
  }
  for (double r : ratios) {
    if (!(r > 0.0)) throw std::invalid_argument("seed_random: ratios must be positive");
  }

  const bool torus = std::holds_alternative<LatticeBasis>(container);
  double area = torus ? std::get<LatticeBasis>(container).area()
                      : std::get<TricuspContainer>(container).cusp_area();
  double sq = 0.0;
  for (double r : ratios) sq += r * r;
  double scale = std::sqrt(0.05 * area / (M_PI * sq));

  std::vector<double> radii(ratios);
  for (double& r : radii) r *= scale;

  std::mt19937_64 rng(seed);
  std::vector<Vec2> centers;
  const int max_attempts = 1000 * n + 1000;
  int attempts = 0;

  auto fits = [&](const Vec2& p, double r) {
    if (torus) {
      const LatticeBasis& L = std::get<LatticeBasis>(container);
      for (size_t k = 0; k < centers.size(); ++k) {
        double need = r + radii[k];
        auto ims = enumerate_images(p, centers[k], L, need, false);
        if (!ims.empty()) return false;
      }
      if (L.shortest_vector() < 2.0 * r) return false;
    } else {
      const TricuspContainer& T = std::get<TricuspContainer>(container);
      if (T.triangle_depth(p) <= 0.0) return false;
      auto cl = T.clearances(p, r);
      for (double g : cl) {
        if (g < 0.0) return false;
      }
      for (size_t k = 0; k < centers.size(); ++k) {
        if ((p - centers[k]).norm() < r + radii[k]) return false;
      }
    }
    return true;
  };

  for (int i = 0; i < n; ++i) {
    while (true) {
      if (++attempts > max_attempts) {
        throw std::runtime_error("seed_random: no room at start scale (ratios infeasible)");
      }
      Vec2 p;
      if (torus) {
        const LatticeBasis& L = std::get<LatticeBasis>(container);
        if (i == 0) {
          p = {0.0, 0.0};
        } else {
          p = uniform01(rng) * L.v1() + uniform01(rng) * L.v2();
        }
      } else {
        const TricuspContainer& T = std::get<TricuspContainer>(container);
        p = {2.0 * T.R * uniform01(rng), std::sqrt(3.0) * T.R * uniform01(rng)};
      }
      if (fits(p, radii[i])) {
        centers.push_back(p);
        break;
      }
      if (i == 0 && torus) {
        throw std::runtime_error("seed_random: first disk does not fit");
      }
    }
  }
  return Packing(container, centers, radii);
}

}  // namespace diskpack
