#include "contclust/solver_kp.hpp"

#include <cmath>

namespace contclust::kp {

fair::FairProfile filter(const FractionalSolution& sol,
                         const MetricInstance& inst, const RadiusGrid& grid,
                         int p) {
  const int n = inst.client_count();
  std::vector<double> R(n);
  for (int v = 0; v < n; ++v) {
    double u = std::max(sol.cost[v], 0.0);
    R[v] = std::pow(2.0, 1.0 / p) * (u > 0.0 ? std::pow(u, 1.0 / p) : 0.0);
  }
  return fair::filter_with_radii(inst, grid, R);
}

bool markov_check(const FractionalSolution& sol, const RadiusGrid& grid, int v,
                  double rho, int p) {
  const int n = static_cast<int>(sol.cost.size());
  double tau = n * kTauLp * std::pow(grid.r_max[v], p);
  return sol.cost[v] >=
         std::pow(rho, p) * (1.0 - sol.y_at(v, rho)) - std::max(tau, kTauLp);
}

RoundOutcome attempt_round(const FractionalSolution& sol,
                           const MetricInstance& inst, const ProblemSpec& spec,
                           const RadiusGrid& grid, double opt_g) {
  fair::FairProfile prof = filter(sol, inst, grid, spec.p);
  double factor = std::pow(2.0, 2 * spec.p + 1);
  return fair::round_profile(sol, inst, grid, prof, opt_g, spec.k, spec.p,
                             factor);
}

}  // namespace contclust::kp
