#pragma once

#include <Eigen/Dense>

#include <vector>

namespace contclust {

enum class RowSense { LE, GE, EQ };

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

/// Dense two-phase revised simplex for small LPs:
///   minimize c^T x  subject to  A x {<=,>=,==} b,  x >= 0.
/// Deterministic pivoting (Dantzig with index tie-breaks, Bland fallback
/// after degenerate stretches). The basis inverse is kept explicitly and
/// refactored periodically.
template <typename Scalar = double>
class SimplexSolver {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  struct Result {
    LpStatus status = LpStatus::IterLimit;
    Vector x;             // primal point (original columns)
    Scalar objective = 0;
    Vector farkas;        // infeasibility certificate: y^T A <= 0, y^T b > 0
    bool farkas_checked = false;
    int iterations = 0;
  };

  Result solve(const Matrix& a, const Vector& b,
               const std::vector<RowSense>& sense, const Vector& c) const;

  int max_iterations = 200000;

 private:
  struct Tableau;
  LpStatus run(Tableau& t, int phase, int& iters) const;
};

using Simplex = SimplexSolver<double>;

}  // namespace contclust
