#include "contclust/simplex.hpp"

#include <cmath>
#include <limits>

namespace contclust {

namespace {
constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-9;
constexpr int kRefactorEvery = 64;
}  // namespace

template <typename Scalar>
struct SimplexSolver<Scalar>::Tableau {
  Matrix a;                // m x ncols, equality standard form
  Vector b;                // >= 0 after row flips
  Vector cost;             // objective over ncols
  std::vector<int> basis;  // size m
  Matrix binv;             // explicit basis inverse
  Vector xb;               // basic values
  int m = 0;
  int ncols = 0;

  void refactor() {
    Matrix bmat(m, m);
    for (int i = 0; i < m; ++i) bmat.col(i) = a.col(basis[i]);
    binv = bmat.partialPivLu().inverse();
    xb = binv * b;
  }

  void pivot(int leave, int enter, const Vector& col, int& since_refactor) {
    basis[leave] = enter;
    if (++since_refactor >= kRefactorEvery) {
      refactor();
      since_refactor = 0;
    } else {
      Scalar piv = col[leave];
      Eigen::Matrix<Scalar, 1, Eigen::Dynamic> pivot_row =
          binv.row(leave) / piv;
      binv.noalias() -= col * pivot_row;
      binv.row(leave) = pivot_row;
      xb = binv * b;
    }
  }
};

template <typename Scalar>
LpStatus SimplexSolver<Scalar>::run(Tableau& t, int /*phase*/,
                                    int& iters) const {
  const int m = t.m;
  int since_refactor = 0;
  int degenerate_run = 0;
  bool bland = false;

  Vector y(m), reduced(t.ncols), col(m);
  while (true) {
    if (++iters > max_iterations) return LpStatus::IterLimit;

    Vector cb(m);
    for (int i = 0; i < m; ++i) cb[i] = t.cost[t.basis[i]];
    y.noalias() = t.binv.transpose() * cb;
    reduced.noalias() = t.cost - t.a.transpose() * y;
    for (int i = 0; i < m; ++i) reduced[t.basis[i]] = 0;

    int enter = -1;
    if (!bland) {
      Scalar best = -kCostTol;
      for (int j = 0; j < t.ncols; ++j)
        if (reduced[j] < best) { best = reduced[j]; enter = j; }
    } else {
      for (int j = 0; j < t.ncols; ++j)
        if (reduced[j] < -kCostTol) { enter = j; break; }
    }
    if (enter < 0) return LpStatus::Optimal;

    col.noalias() = t.binv * t.a.col(enter);

    int leave = -1;
    Scalar best_ratio = std::numeric_limits<Scalar>::infinity();
    for (int i = 0; i < m; ++i) {
      if (col[i] > kPivotTol) {
        Scalar ratio = std::max<Scalar>(t.xb[i], 0) / col[i];
        if (ratio < best_ratio - kPivotTol ||
            (ratio < best_ratio + kPivotTol && leave >= 0 &&
             t.basis[i] < t.basis[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return LpStatus::Unbounded;

    if (best_ratio < kPivotTol) {
      if (++degenerate_run > 4 * (t.ncols + m)) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
    t.pivot(leave, enter, col, since_refactor);
  }
}

template <typename Scalar>
typename SimplexSolver<Scalar>::Result SimplexSolver<Scalar>::solve(
    const Matrix& a_in, const Vector& b_in, const std::vector<RowSense>& sense,
    const Vector& c_in) const {
  const int m = static_cast<int>(a_in.rows());
  const int n = static_cast<int>(a_in.cols());
  Result res;

  // Row scaling, then flip rows so b >= 0.
  Matrix a = a_in;
  Vector b = b_in;
  std::vector<RowSense> sns = sense;
  Vector row_scale(m);
  for (int i = 0; i < m; ++i) {
    Scalar s = a.row(i).template lpNorm<Eigen::Infinity>();
    s = std::max<Scalar>(s, std::abs(b[i]));
    row_scale[i] = (s > 0) ? 1 / s : 1;
    a.row(i) *= row_scale[i];
    b[i] *= row_scale[i];
    if (b[i] < 0) {
      a.row(i) = -a.row(i);
      b[i] = -b[i];
      if (sns[i] == RowSense::LE) sns[i] = RowSense::GE;
      else if (sns[i] == RowSense::GE) sns[i] = RowSense::LE;
    }
  }

  int nslack = 0;
  for (auto s : sns)
    if (s != RowSense::EQ) ++nslack;
  const int nstruct = n + nslack;

  Tableau t;
  t.m = m;
  t.ncols = nstruct + m;  // artificials appended for phase 1
  t.a = Matrix::Zero(m, t.ncols);
  t.a.leftCols(n) = a;
  t.b = b;

  int sc = n;
  t.basis.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    if (sns[i] == RowSense::LE) {
      t.a(i, sc) = 1;
      t.basis[i] = sc++;
    } else if (sns[i] == RowSense::GE) {
      t.a(i, sc) = -1;
      ++sc;
    }
  }
  for (int i = 0; i < m; ++i) {
    t.a(i, nstruct + i) = 1;
    if (t.basis[i] < 0) t.basis[i] = nstruct + i;
  }

  // Phase 1: minimize the artificial mass.
  t.cost = Vector::Zero(t.ncols);
  for (int i = 0; i < m; ++i) t.cost[nstruct + i] = 1;
  t.refactor();
  int iters = 0;
  LpStatus st = run(t, 1, iters);
  res.iterations = iters;
  if (st != LpStatus::Optimal) return res;  // IterLimit (Unbounded impossible)

  Scalar art_mass = 0;
  for (int i = 0; i < m; ++i)
    if (t.basis[i] >= nstruct) art_mass += std::max<Scalar>(t.xb[i], 0);
  if (art_mass > kFeasTol * 10) {
    res.status = LpStatus::Infeasible;
    // Phase-1 duals certify infeasibility of the scaled system:
    // u = -y satisfies u^T A_j <= 0 for every real column and u^T b > 0.
    Vector cb(m);
    for (int i = 0; i < m; ++i) cb[i] = t.cost[t.basis[i]];
    Vector y = t.binv.transpose() * cb;
    res.farkas = Vector::Zero(m);
    for (int i = 0; i < m; ++i) {
      Scalar sign = (b_in[i] * row_scale[i] < 0) ? -1 : 1;
      res.farkas[i] = -y[i] * sign * row_scale[i];
    }
    // At phase-1 optimality y^T A_j <= 0 for every real column and
    // y^T b equals the positive artificial mass.
    Vector red = t.a.leftCols(nstruct).transpose() * y;
    res.farkas_checked =
        (red.maxCoeff() <= 1e-6) && (y.dot(t.b) > kFeasTol / 2);
    return res;
  }

  // Pivot surviving artificials out of the basis; rows where no structural
  // column has a nonzero entry are linearly dependent and get dropped.
  int since_refactor = 0;
  std::vector<char> drop(m, 0);
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < nstruct) continue;
    std::vector<char> inbasis(t.ncols, 0);
    for (int bi : t.basis) inbasis[bi] = 1;
    int enter = -1;
    Vector col(m);
    for (int j = 0; j < nstruct && enter < 0; ++j) {
      if (inbasis[j]) continue;
      col.noalias() = t.binv * t.a.col(j);
      if (std::abs(col[i]) > 1e-7) enter = j;
    }
    if (enter < 0) {
      drop[i] = 1;
      continue;
    }
    col.noalias() = t.binv * t.a.col(enter);
    // Degenerate pivot: the artificial sits at zero.
    t.basis[i] = enter;
    t.refactor();
  }

  int kept = 0;
  for (int i = 0; i < m; ++i) kept += !drop[i];
  if (kept < m) {
    Matrix a2(kept, nstruct);
    Vector b2(kept);
    std::vector<int> basis2;
    int r = 0;
    for (int i = 0; i < m; ++i) {
      if (drop[i]) continue;
      a2.row(r) = t.a.row(i).head(nstruct);
      b2[r] = t.b[i];
      basis2.push_back(t.basis[i]);
      ++r;
    }
    t.a = std::move(a2);
    t.b = std::move(b2);
    t.basis = std::move(basis2);
    t.m = kept;
    t.ncols = nstruct;
  } else {
    t.a.conservativeResize(m, nstruct);
    t.ncols = nstruct;
  }

  t.cost = Vector::Zero(t.ncols);
  t.cost.head(n) = c_in;
  t.refactor();
  st = run(t, 2, iters);
  res.iterations = iters;
  if (st == LpStatus::IterLimit) return res;
  if (st == LpStatus::Unbounded) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  t.refactor();  // collapse accumulated eta-update drift before extraction

  res.status = LpStatus::Optimal;
  res.x = Vector::Zero(n);
  for (int i = 0; i < t.m; ++i)
    if (t.basis[i] < n) res.x[t.basis[i]] = std::max<Scalar>(t.xb[i], 0);
  res.objective = c_in.dot(res.x);
  return res;
}

template class SimplexSolver<double>;

}  // namespace contclust
