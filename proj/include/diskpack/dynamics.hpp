#pragma once

#include <cstdint>
#include <string>

#include "diskpack/rigidity.hpp"

namespace diskpack {

/// Driver knobs. All lengths are absolute; defaults_for derives them from
/// the seed packing scale. The seed is mandatory, there are no entropy
/// defaults anywhere in the driver.
struct DriverConfig {
  JamMode mode = JamMode::Collective;
  double activation = 0.0;    // near-contact activation distance
  double step_cap = 0.0;      // LP box on displacement components
  double jiggle = 0.0;        // initial jiggle amplitude
  int max_outer = 2000;
  double t_threshold = 1e-10; // convergence threshold on the growth rate
  int sd_interval = 5;        // strict mode: one lattice step per this many inflations
  std::uint64_t seed = 0;

  static DriverConfig defaults_for(const Packing& P, JamMode mode, std::uint64_t seed);
  void check() const;
};

struct TrajectoryRow {
  int iter = 0;
  double t = 1.0;       // cumulative uniform scale relative to the seed radii
  double density = 0.0;
  int contacts = 0;
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;
  std::string termination;
};

struct StepResult {
  Packing packing;
  double t_star = 0.0;  // realized uniform growth rate of this step
};

/// One LP inflation step: fixed lattice and radius ratios, centers move,
/// radii scale by the realized growth rate.
StepResult danzer_step(const Packing& P, const DriverConfig& cfg);

/// One LP lattice-deformation step at fixed radii; the torus area is
/// nonincreasing. Returns the input unchanged when stationary.
Packing swinnerton_dyer_step(const Packing& P, const DriverConfig& cfg);

/// LP ascent on sum(r_i^2) at fixed centers and lattice; runs to a
/// stationary vertex of the linear constraint polytope.
Packing thurston_step(const Packing& P, const DriverConfig& cfg);

struct JamOutcome {
  bool success = false;
  Packing packing;
  Trajectory trajectory;
  JammingReport report;
};

/// Inflation loop with seeded jiggles of geometrically decaying amplitude
/// (and interleaved lattice deformation in strict mode); succeeds when the
/// rigidity module certifies the spine jammed without tolerance ambiguity.
JamOutcome jam(const Packing& seed, const DriverConfig& cfg);

/// Rejection-sampled non-overlapping seed at small uniform scale,
/// deterministic in the seed. Torus packings keep center 1 at the origin.
Packing seed_random(int n, const std::vector<double>& ratios, const Container& container,
                    std::uint64_t seed);

}  // namespace diskpack
