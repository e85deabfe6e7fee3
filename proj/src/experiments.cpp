#include "diskpack/experiments.hpp"

#include <cmath>
#include <random>

namespace diskpack {

double binary_density(double r) {
  if (!(r > 0.0) || !(r <= 1.0)) {
    throw std::invalid_argument("binary_density: r must lie in (0, 1]");
  }
  return M_PI * (1.0 + r * r) / (4.0 * std::sqrt(r * r + 2.0 * r));
}

double heppes_bound(int n1, int n2) {
  if (n1 <= 0 || n2 < 0 || n2 > n1) {
    throw std::invalid_argument("heppes_bound: need n1 >= n2 >= 0 and n1 > 0");
  }
  const double s2 = std::sqrt(2.0) - 1.0;
  return M_PI * (n1 + n2 * s2 * s2) / (2.0 * std::sqrt(3.0) * (n1 - n2) + 4.0 * n2);
}

SweepResult binary_sweep(double r_min, double r_max, int steps) {
  if (!(0.0 < r_min) || !(r_min < r_max) || !(r_max <= 1.0) || steps < 1) {
    throw std::invalid_argument("binary_sweep: need 0 < r_min < r_max <= 1 and steps >= 1");
  }
  SweepResult out;
  out.rows.resize(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    double r = r_min + (r_max - r_min) * static_cast<double>(i) / steps;
    out.rows[i].r = r;
    out.rows[i].density = binary_density(r);
  }
  out.min_second_diff = 0.0;
  for (int i = 1; i < steps; ++i) {
    double d2 = out.rows[i + 1].density - 2.0 * out.rows[i].density + out.rows[i - 1].density;
    out.rows[i].second_diff = d2;
    out.min_second_diff = std::min(out.min_second_diff, d2);
  }
  return out;
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

LatticeBasis sample_lattice(LatticeMode mode, std::mt19937_64& rng) {
  switch (mode) {
    case LatticeMode::Square:
      return LatticeBasis(1.0, 0.0, 1.0);
    case LatticeMode::Rect: {
      double a = 0.85 + 0.3 * uniform01(rng);
      return LatticeBasis(a, 0.0, 1.0 / a);
    }
    case LatticeMode::Generic: {
      double a = 0.85 + 0.3 * uniform01(rng);
      double b = (0.05 + 0.9 * uniform01(rng)) * a;
      return LatticeBasis(a, b, 1.0 / a);
    }
  }
  throw std::invalid_argument("sample_lattice: unknown mode");
}

}  // namespace

ExperimentResult isostatic_experiment(int n, int trials, double ratio_spread,
                                      LatticeMode mode, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("isostatic_experiment: trials >= 1");
  if (!(ratio_spread > 0.0) || !(ratio_spread < 1.0)) {
    throw std::invalid_argument("isostatic_experiment: spread must lie in (0, 1)");
  }

  ExperimentResult out;
  out.summary.trials = trials;
  for (int t = 0; t < trials; ++t) {
    TrialRecord rec;
    rec.seed = seed + static_cast<std::uint64_t>(t);
    rec.n = n;
    std::mt19937_64 rng(rec.seed);

    const double llo = std::log(1.0 - ratio_spread), lhi = std::log(1.0 + ratio_spread);
    rec.ratios.resize(n);
    for (int i = 0; i < n; ++i) {
      rec.ratios[i] = std::exp(llo + (lhi - llo) * uniform01(rng));
    }
    rec.lattice = sample_lattice(mode, rng);

    Packing seed_pack = seed_random(n, rec.ratios, rec.lattice, rng());
    DriverConfig cfg = DriverConfig::defaults_for(seed_pack, JamMode::Collective, rng());
    JamOutcome res = jam(seed_pack, cfg);

    rec.jam_success = res.success;
    rec.ambiguous = res.report.ambiguous;
    rec.n_spine = res.report.n_spine;
    rec.k_spine = res.report.k_spine;
    rec.isostatic = res.report.isostatic;
    out.records.push_back(std::move(rec));
  }

  for (const TrialRecord& r : out.records) {
    if (r.jam_success) {
      ++out.summary.jams;
      if (!r.ambiguous) {
        ++out.summary.unambiguous_jams;
        if (r.isostatic) ++out.summary.isostatic_count;
      }
    }
  }
  out.summary.isostatic_fraction =
      out.summary.unambiguous_jams > 0
          ? static_cast<double>(out.summary.isostatic_count) / out.summary.unambiguous_jams
          : 0.0;
  return out;
}

StellarCheck stellar_density_check() {
  StellarCheck c;
  c.density = density(catalog("stellar124"));
  c.target = 7.0 * M_PI / 24.0;
  c.heppes = M_PI * (2.0 - std::sqrt(2.0)) / 2.0;
  c.ok = std::abs(c.density - c.target) <= 1e-6 && c.density < c.heppes;
  return c;
}

}  // namespace diskpack
