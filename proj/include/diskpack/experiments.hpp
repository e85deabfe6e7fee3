#pragma once

#include <cstdint>
#include <vector>

#include "diskpack/dynamics.hpp"

namespace diskpack {

/// Density of the one-parameter family of strictly jammed binary packings
/// with radius ratio r in (0, 1]: pi (1 + r^2) / (4 sqrt(r^2 + 2r)).
double binary_density(double r);

/// Conjectured maximum density for n1 disks of radius 1 and n2 of radius
/// sqrt(2) - 1 (n1 >= n2 >= 0, n1 > 0):
/// pi (n1 + n2 (sqrt(2)-1)^2) / (2 sqrt(3) (n1 - n2) + 4 n2).
double heppes_bound(int n1, int n2);

struct SweepRow {
  double r = 0.0;
  double density = 0.0;
  double second_diff = 0.0;  // centered second difference, 0 at the ends
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double min_second_diff = 0.0;
};

/// Evaluates binary_density on steps+1 equally spaced points of
/// [r_min, r_max] with discrete concavity diagnostics.
SweepResult binary_sweep(double r_min, double r_max, int steps);

enum class LatticeMode { Generic, Square, Rect };

struct TrialRecord {
  std::uint64_t seed = 0;
  int n = 0;
  std::vector<double> ratios;
  LatticeBasis lattice;
  bool jam_success = false;
  bool ambiguous = false;
  int n_spine = 0;
  int k_spine = 0;
  bool isostatic = false;
};

struct ExperimentSummary {
  int trials = 0;
  int jams = 0;
  int unambiguous_jams = 0;
  int isostatic_count = 0;
  double isostatic_fraction = 0.0;  // among unambiguous jams
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  ExperimentSummary summary;
};

/// Per trial: ratios log-uniform in [1-spread, 1+spread], lattice sampled by
/// mode at determinant 1, then the collective jamming driver runs with the
/// trial's own RNG stream (seed + index). The isostatic fraction counts only
/// trials whose certificate carries no tolerance ambiguity.
ExperimentResult isostatic_experiment(int n, int trials, double ratio_spread,
                                      LatticeMode mode, std::uint64_t seed);

struct StellarCheck {
  double density = 0.0;
  double target = 0.0;   // 7 pi / 24
  double heppes = 0.0;   // pi (2 - sqrt(2)) / 2
  bool ok = false;
};

/// Density of the stellar-subdivision catalog packing against its closed
/// form, and the comparison with the binary grid packing.
StellarCheck stellar_density_check();

}  // namespace diskpack
