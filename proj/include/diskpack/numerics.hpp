#pragma once

#include <Eigen/Dense>
#include <limits>

namespace diskpack {

using DenseMatrix = Eigen::MatrixXd;
using DenseVector = Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RankResult {
  int rank = 0;
  DenseMatrix nullspace;  // orthonormal columns spanning {x : Mx ~ 0}
  double tol_used = 0.0;
  /// Smallest singular value counted toward the rank (inf if rank 0) and
  /// largest singular value treated as zero (0 if full rank).
  double smallest_kept = kInf;
  double largest_dropped = 0.0;
  /// A verdict is tolerance-ambiguous when some singular value sits within
  /// a factor `band` of the rank cutoff.
  bool ambiguous(double band = 100.0) const;
};

/// Numerical rank and orthonormal nullspace basis via SVD. Default tolerance
/// max(rows, cols) * eps * sigma_max, overridable. Basis sign convention:
/// first component of magnitude > 1e-12 is positive.
RankResult rank_and_nullspace(const DenseMatrix& M, double tol_override = -1.0);

/// maximize objective . x
/// subject to  A x <= b,  E x = f,  lo <= x <= hi  (entries may be +-inf)
struct LinearProgram {
  DenseVector objective;
  DenseMatrix A;
  DenseVector b;
  DenseMatrix E;
  DenseVector f;
  DenseVector lo;
  DenseVector hi;

  int num_vars() const { return static_cast<int>(objective.size()); }
  static LinearProgram make(int nvars);
};

enum class LPStatus { Optimal, Unbounded, Infeasible };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  DenseVector x;
  double value = 0.0;
  int pivots = 0;
};

/// Dense two-phase simplex with Bland's rule: deterministic, cycle-free.
/// Sized for desk-scale problems (a few hundred variables).
LPResult solve_lp(const LinearProgram& lp);

}  // namespace diskpack
