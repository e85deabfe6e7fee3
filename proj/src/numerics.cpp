#include "diskpack/numerics.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace diskpack {

bool RankResult::ambiguous(double band) const {
  if (smallest_kept != kInf && smallest_kept < tol_used * band) return true;
  if (largest_dropped > tol_used / band) return true;
  return false;
}

RankResult rank_and_nullspace(const DenseMatrix& M, double tol_override) {
  RankResult res;
  if (M.rows() == 0 || M.cols() == 0) {
    // Empty matrix: rank 0, nullspace is all of R^cols.
    res.rank = 0;
    res.nullspace = DenseMatrix::Identity(M.cols(), M.cols());
    res.tol_used = tol_override > 0.0 ? tol_override : 0.0;
    return res;
  }
  if (!M.allFinite()) throw std::invalid_argument("rank_and_nullspace: non-finite entries");

  Eigen::JacobiSVD<DenseMatrix> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  double tol = tol_override > 0.0
                   ? tol_override
                   : static_cast<double>(std::max(M.rows(), M.cols())) *
                         std::numeric_limits<double>::epsilon() * smax;
  if (tol == 0.0) tol = std::numeric_limits<double>::min();

  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol) ++rank;
  }
  res.rank = rank;
  res.tol_used = tol;
  if (rank > 0) res.smallest_kept = sv(rank - 1);
  if (rank < sv.size()) res.largest_dropped = sv(rank);

  const int cols = static_cast<int>(M.cols());
  res.nullspace = svd.matrixV().rightCols(cols - rank);
  // Fixed sign convention so identical inputs give identical bases.
  for (int c = 0; c < res.nullspace.cols(); ++c) {
    for (int r = 0; r < res.nullspace.rows(); ++r) {
      double v = res.nullspace(r, c);
      if (std::abs(v) > 1e-12) {
        if (v < 0.0) res.nullspace.col(c) = -res.nullspace.col(c);
        break;
      }
    }
  }
  return res;
}

LinearProgram LinearProgram::make(int nvars) {
  LinearProgram lp;
  lp.objective = DenseVector::Zero(nvars);
  lp.A.resize(0, nvars);
  lp.b.resize(0);
  lp.E.resize(0, nvars);
  lp.f.resize(0);
  lp.lo = DenseVector::Constant(nvars, -kInf);
  lp.hi = DenseVector::Constant(nvars, kInf);
  return lp;
}

namespace {

constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-9;
constexpr int kMaxPivots = 200000;

// Tableau simplex on the standard form
//   max c.u  s.t.  T u = rhs, u >= 0
// with Bland's rule. Basis holds the variable index of each row.
struct Tableau {
  DenseMatrix T;     // m x ncols
  DenseVector rhs;   // m
  std::vector<int> basis;

  int rows() const { return static_cast<int>(T.rows()); }
  int cols() const { return static_cast<int>(T.cols()); }

  void pivot(int r, int c) {
    double piv = T(r, c);
    T.row(r) /= piv;
    rhs(r) /= piv;
    for (int k = 0; k < rows(); ++k) {
      if (k == r) continue;
      double f = T(k, c);
      if (f != 0.0) {
        T.row(k) -= f * T.row(r);
        rhs(k) -= f * rhs(r);
      }
    }
    basis[r] = c;
  }
};

// Runs phase-2 simplex for objective c (maximization) over columns
// [0, active_cols). Returns false on unbounded.
bool run_simplex(Tableau& tab, const DenseVector& c, int active_cols, int& pivots) {
  const int m = tab.rows();
  DenseVector y(m);
  while (true) {
    if (++pivots > kMaxPivots) throw std::runtime_error("solve_lp: pivot limit exceeded");
    // Reduced costs z_j - c_j computed from the basis.
    for (int r = 0; r < m; ++r) y(r) = c(tab.basis[r]);
    int enter = -1;
    for (int j = 0; j < active_cols; ++j) {
      double rc = c(j) - y.dot(tab.T.col(j));
      if (rc > kCostTol) { enter = j; break; }  // Bland: lowest index
    }
    if (enter < 0) return true;
    int leave = -1;
    double best = kInf;
    for (int r = 0; r < m; ++r) {
      double a = tab.T(r, enter);
      if (a > kPivotTol) {
        double ratio = tab.rhs(r) / a;
        if (ratio < best - 1e-15 ||
            (ratio < best + 1e-15 && (leave < 0 || tab.basis[r] < tab.basis[leave]))) {
          best = ratio;
          leave = r;
        }
      }
    }
    if (leave < 0) return false;  // unbounded
    tab.pivot(leave, enter);
  }
}

}  // namespace

LPResult solve_lp(const LinearProgram& lp) {
  const int n = lp.num_vars();
  if (lp.A.cols() != n || lp.E.cols() != n || lp.lo.size() != n || lp.hi.size() != n ||
      lp.A.rows() != lp.b.size() || lp.E.rows() != lp.f.size()) {
    throw std::invalid_argument("solve_lp: inconsistent dimensions");
  }

  // Substitute bounded variables by nonnegative ones.
  //   lo finite:            x = lo + u,        u >= 0 (+ row u <= hi - lo)
  //   lo = -inf, hi finite: x = hi - u,        u >= 0
  //   both infinite:        x = u+ - u-,       u+- >= 0
  struct VarMap {
    int u = -1, w = -1;   // column indices
    double shift = 0.0;
    double sign = 1.0;    // x = shift + sign*u (+ (u - w) when w >= 0)
  };
  std::vector<VarMap> vmap(n);
  int nu = 0;
  for (int j = 0; j < n; ++j) {
    if (std::isfinite(lp.lo(j))) {
      vmap[j] = {nu++, -1, lp.lo(j), 1.0};
    } else if (std::isfinite(lp.hi(j))) {
      vmap[j] = {nu++, -1, lp.hi(j), -1.0};
    } else {
      vmap[j] = {nu, nu + 1, 0.0, 1.0};
      nu += 2;
    }
  }

  std::vector<DenseVector> rows;
  std::vector<double> rhs_vals;
  std::vector<int> row_kind;  // 0 = inequality (<=), 1 = equality

  auto transform_row = [&](const DenseVector& a, double bval, int kind) {
    DenseVector row = DenseVector::Zero(nu);
    double shift = 0.0;
    for (int j = 0; j < n; ++j) {
      double coef = a(j);
      if (coef == 0.0) continue;
      shift += coef * vmap[j].shift;
      row(vmap[j].u) += coef * vmap[j].sign;
      if (vmap[j].w >= 0) row(vmap[j].w) -= coef;
    }
    rows.push_back(row);
    rhs_vals.push_back(bval - shift);
    row_kind.push_back(kind);
  };

  for (int r = 0; r < lp.A.rows(); ++r) transform_row(lp.A.row(r), lp.b(r), 0);
  for (int r = 0; r < lp.E.rows(); ++r) transform_row(lp.E.row(r), lp.f(r), 1);
  // Upper bounds of doubly-bounded variables become rows.
  for (int j = 0; j < n; ++j) {
    if (std::isfinite(lp.lo(j)) && std::isfinite(lp.hi(j))) {
      DenseVector a = DenseVector::Zero(n);
      a(j) = 1.0;
      transform_row(a, lp.hi(j), 0);
    }
  }

  DenseVector cu = DenseVector::Zero(nu);
  double cshift = 0.0;
  for (int j = 0; j < n; ++j) {
    double coef = lp.objective(j);
    cshift += coef * vmap[j].shift;
    cu(vmap[j].u) += coef * vmap[j].sign;
    if (vmap[j].w >= 0) cu(vmap[j].w) -= coef;
  }

  const int m = static_cast<int>(rows.size());
  LPResult res;
  res.x = DenseVector::Zero(n);

  // Column layout: [u vars | slacks | artificials].
  int nslack = 0;
  for (int k : row_kind) nslack += (k == 0);
  std::vector<int> art_of_row(m, -1);
  int nart = 0;
  for (int r = 0; r < m; ++r) {
    bool neg = rhs_vals[r] < 0.0;
    if (row_kind[r] == 1 || neg) art_of_row[r] = nart++;
  }
  const int total = nu + nslack + nart;

  Tableau tab;
  tab.T = DenseMatrix::Zero(m, total);
  tab.rhs = DenseVector::Zero(m);
  tab.basis.assign(m, -1);

  int slack_at = nu;
  for (int r = 0; r < m; ++r) {
    DenseVector row = rows[r];
    double rv = rhs_vals[r];
    double s = 1.0;
    if (rv < 0.0) { row = -row; rv = -rv; s = -1.0; }
    tab.T.row(r).head(nu) = row.transpose();
    tab.rhs(r) = rv;
    if (row_kind[r] == 0) {
      tab.T(r, slack_at) = s;
      if (s > 0.0 && art_of_row[r] < 0) tab.basis[r] = slack_at;
      ++slack_at;
    }
    if (art_of_row[r] >= 0) {
      int col = nu + nslack + art_of_row[r];
      tab.T(r, col) = 1.0;
      tab.basis[r] = col;
    }
  }

  res.pivots = 0;

  if (nart > 0) {
    // Phase 1: maximize -sum(artificials).
    DenseVector c1 = DenseVector::Zero(total);
    for (int k = 0; k < nart; ++k) c1(nu + nslack + k) = -1.0;
    if (!run_simplex(tab, c1, total, res.pivots)) {
      throw std::runtime_error("solve_lp: phase 1 unbounded (internal error)");
    }
    double art_sum = 0.0;
    for (int r = 0; r < m; ++r) {
      if (tab.basis[r] >= nu + nslack) art_sum += tab.rhs(r);
    }
    if (art_sum > kFeasTol) {
      res.status = LPStatus::Infeasible;
      return res;
    }
    // Pivot remaining artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
      if (tab.basis[r] >= nu + nslack) {
        int enter = -1;
        for (int j = 0; j < nu + nslack; ++j) {
          if (std::abs(tab.T(r, j)) > kPivotTol) { enter = j; break; }
        }
        if (enter >= 0) tab.pivot(r, enter);
        // else the row is redundant; the artificial stays basic at zero.
      }
    }
  }

  // Phase 2 over structural + slack columns only.
  DenseVector c2 = DenseVector::Zero(total);
  c2.head(nu) = cu;
  if (!run_simplex(tab, c2, nu + nslack, res.pivots)) {
    res.status = LPStatus::Unbounded;
    return res;
  }

  DenseVector u = DenseVector::Zero(nu);
  for (int r = 0; r < m; ++r) {
    if (tab.basis[r] >= 0 && tab.basis[r] < nu) u(tab.basis[r]) = tab.rhs(r);
  }
  for (int j = 0; j < n; ++j) {
    double v = vmap[j].shift + vmap[j].sign * u(vmap[j].u);
    if (vmap[j].w >= 0) v -= u(vmap[j].w);
    res.x(j) = v;
  }
  res.value = cshift + cu.dot(u);
  res.status = LPStatus::Optimal;
  return res;
}

}  // namespace diskpack
