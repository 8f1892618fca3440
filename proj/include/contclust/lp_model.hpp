#pragma once

#include "contclust/grid.hpp"
#include "contclust/metric.hpp"
#include "contclust/simplex.hpp"

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace contclust {

// Centralized tolerances.
constexpr double kTauLp = 1e-7;    // LP satisfaction, absolute post-rescale
constexpr double kTauCut = 1e-6;   // minimum violation for admitting a cut

struct GridMissingRadius : std::runtime_error {
  explicit GridMissingRadius(const std::string& what)
      : std::runtime_error(what) {}
};
struct InvariantBreach : std::runtime_error {
  explicit InvariantBreach(const std::string& what)
      : std::runtime_error(what) {}
};
struct NumericalFailure : std::runtime_error {
  explicit NumericalFailure(const std::string& what)
      : std::runtime_error(what) {}
};

enum class VarKind { Cost, Ball, Cov };

/// LP variable: C_v (or its p-th power surrogate U_v), a ball mass y(v, rho),
/// or cov_v for k-center with outliers. Clients are local indices.
struct VarIndex {
  VarKind kind = VarKind::Cost;
  int client = 0;
  double radius = 0.0;  // Ball only

  static VarIndex cost(int v) { return {VarKind::Cost, v, 0.0}; }
  static VarIndex ball(int v, double rho) { return {VarKind::Ball, v, rho}; }
  static VarIndex cov(int v) { return {VarKind::Cov, v, 0.0}; }

  friend bool operator==(const VarIndex& a, const VarIndex& b) {
    return a.kind == b.kind && a.client == b.client && a.radius == b.radius;
  }
};

struct LinearConstraint {
  std::vector<std::pair<VarIndex, double>> terms;
  RowSense sense = RowSense::LE;
  double rhs = 0.0;
  std::string tag;
};

enum class CutFamily { UFL_ALPHA, FAIR, KCWO };

/// Disjoint-ball separating constraint in canonical form.
///   FAIR / KCWO:  sum_j y(j, rho_j) <= k
///   UFL_ALPHA:    lambda * sum_j y(j, rho_j) + sum_v C_v <= opt_g
struct SepCut {
  CutFamily family = CutFamily::FAIR;
  std::vector<std::pair<int, double>> balls;  // (client, radius), sorted
  double opt_g = 0.0;  // UFL_ALPHA
  double lambda = 0.0; // UFL_ALPHA
  int k = 0;           // FAIR / KCWO

  std::string canonical_key() const;
};

/// LP point over the materialized radii; values at unmaterialized grid radii
/// are read through the right-continuous completion y(v, rho) = y at the next
/// materialized radius.
struct FractionalSolution {
  std::vector<std::vector<double>> radii;  // materialized, per client
  std::vector<std::vector<double>> ball;   // y values aligned with radii
  std::vector<double> cost;                // C_v (p = 1) or U_v = C_v^p
  std::vector<double> cov;                 // KCWO only

  double y_at(int v, double rho) const;
  double value(const VarIndex& var) const;
};

/// Base constraints plus the accumulated cut set, keyed for deduplication.
/// Ball variables exist only at materialized radii; cuts at new grid radii
/// materialize them and the base rows are rebuilt around the finer split.
class ConstraintPool {
 public:
  ConstraintPool(const MetricInstance& inst, const ProblemSpec& spec,
                 const RadiusGrid& grid, double opt_g);

  // No-op (returns false) when the canonical key is already present.
  // Throws InvariantBreach when the balls are not pairwise disjoint.
  bool add_cut(const SepCut& cut);

  // Inserts rho into client v's materialized list (must lie on the grid).
  bool materialize(int v, double rho);

  const std::vector<std::vector<double>>& materialized() const {
    return radii_;
  }
  const std::vector<LinearConstraint>& base_rows() const { return base_; }
  const std::vector<SepCut>& cuts() const { return cuts_; }
  std::vector<LinearConstraint> all_rows() const;

  const MetricInstance& instance() const { return *inst_; }
  const ProblemSpec& spec() const { return *spec_; }
  const RadiusGrid& grid() const { return *grid_; }
  double opt_g() const { return opt_g_; }

  // Max violation over all rows (positive = violated), with the offending tag.
  std::pair<double, std::string> max_violation(
      const FractionalSolution& sol) const;

  void dump(std::ostream& os) const;

  double tau_cut = kTauCut;

 private:
  void rebuild_base();
  LinearConstraint cut_row(const SepCut& cut) const;

  const MetricInstance* inst_;
  const ProblemSpec* spec_;
  const RadiusGrid* grid_;
  double opt_g_;
  std::vector<std::vector<double>> radii_;
  std::vector<LinearConstraint> base_;
  std::vector<SepCut> cuts_;
  std::set<std::string> keys_;
};

/// Base constraint pool per the problem kind; materializes the structural
/// radii (distances, half-distances, fairness radii, extras, R_max).
ConstraintPool build_base(const MetricInstance& inst, const ProblemSpec& spec,
                          const RadiusGrid& grid, double opt_g);

enum class LpObjective { MinimizeCost, Feasibility };

struct LpSolveResult {
  enum class Status { Solution, Infeasible } status = Status::Infeasible;
  FractionalSolution sol;
  bool farkas_checked = false;
  int iterations = 0;
};

/// Solves the pool LP. The returned point satisfies every pool row within
/// kTauLp (scaled by the row magnitude); Infeasible comes with a verified
/// Farkas certificate of the finite pool. Throws NumericalFailure when the
/// backend cannot certify either outcome.
LpSolveResult solve_lp(const ConstraintPool& pool, LpObjective objective);

/// Signed violation of `cut` at `sol` (positive = violated by that amount).
double check_cut_violated(const FractionalSolution& sol, const SepCut& cut);

/// Integral point induced by opening S (point ids into inst.dist):
/// C_v = d(v,S)^p, y(v,rho) = [d(v,S) <= rho], cov_v = [d(v,S) <= opt_g].
FractionalSolution induced_solution(const ConstraintPool& pool,
                                    const std::vector<int>& centers);

}  // namespace contclust
