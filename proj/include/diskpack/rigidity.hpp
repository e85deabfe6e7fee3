#pragma once

#include <optional>
#include <vector>

#include "diskpack/numerics.hpp"
#include "diskpack/packing.hpp"

namespace diskpack {

enum class JamMode { Collective, Strict, Tricusp };

const char* jam_mode_name(JamMode m);

/// One row per contact, unit edge vector in block i and its negation in
/// block j, rows scaled by 1/|e|. Torus modes pin the first included vertex
/// (columns removed); strict mode appends d|e|/d(a,b,c) columns and carries
/// the area-nonincrease row separately. Loop contacts give all-zero rows at
/// fixed lattice but real lattice entries in strict mode.
struct RigidityMatrix {
  JamMode mode = JamMode::Collective;
  int n_full = 0;
  std::vector<int> vertices;   // packing vertex ids covered, ascending
  int pinned = -1;             // packing vertex id with columns removed
  DenseMatrix R;
  Eigen::RowVectorXd area_row; // strict mode; empty otherwise
  std::vector<int> contact_ids;

  int rows() const { return static_cast<int>(R.rows()); }
  int cols() const { return static_cast<int>(R.cols()); }
  bool has_area_row() const { return area_row.size() > 0; }
};

RigidityMatrix build_rigidity_matrix(const Packing& P, const ContactGraph& G, JamMode mode);
RigidityMatrix build_rigidity_matrix(const Packing& P, const ContactGraph& G, JamMode mode,
                                     const std::vector<int>& vertex_subset);

/// Equilibrium stresses: nullspace of the transpose, area row included in
/// strict mode (its coefficient is the pressure conjugate to the torus area).
struct StressSpace {
  int dim = 0;
  DenseMatrix basis;        // (rows [+1 strict]) x dim, orthonormal columns
  double max_residual = 0.0;
};

StressSpace stress_space(const RigidityMatrix& Rm);

/// Rattler extraction: geometric pruning (fewer than three constraint
/// directions, or directions that fail to span positively) cascaded with the
/// authoritative max-support proper-stress LP.
std::pair<std::vector<int>, std::vector<int>> extract_spine(const Packing& P,
                                                            const ContactGraph& G,
                                                            JamMode mode);

struct ReportTolerances {
  double contact_tol = 0.0;
  double rank_tol = 0.0;
  double guard_band = 100.0;
  double lp_feasibility = 1e-9;
  double stress_residual = 0.0;
};

struct JammingReport {
  JamMode mode = JamMode::Collective;
  int n = 0;        // disks in the packing
  int k = 0;        // detected contacts in the full graph
  int n_spine = 0;
  int k_spine = 0;
  int bar_rank = 0;
  int expected_rank = 0;
  int stress_dim = 0;
  std::vector<int> spine;
  std::vector<int> rattlers;
  bool jammed = false;
  bool isostatic = false;
  bool ambiguous = false;       // rank within the guard band; not silently resolved
  bool routes_agree = true;     // certificate test vs direct flex LP
  double flex_lp_value = 0.0;
  ReportTolerances tolerances;
  std::optional<DenseVector> witness_stress;  // per spine contact (+ area term, strict)
  std::optional<DenseVector> witness_flex;    // spine dof layout (+ lattice, strict)
};

/// Certificate route (full column rank plus strict proper stress found by LP)
/// cross-checked against the direct flex LP. The certificate decides the
/// verdict; disagreement is recorded.
JammingReport test_collective_jamming(const Packing& P, const ContactGraph& G);
JammingReport test_strict_jamming(const Packing& P, const ContactGraph& G);
JammingReport test_tricusp_jamming(const Packing& P, const ContactGraph& G);

/// Dispatch on mode (strict/tricusp require the matching container).
JammingReport test_jamming(const Packing& P, const ContactGraph& G, JamMode mode);

}  // namespace diskpack
