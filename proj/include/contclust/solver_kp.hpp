#pragma once

#include "contclust/solver_fair.hpp"

namespace contclust::kp {

/// Filtering radius R(v) = 2^{1/p} C_v with C_v = U_v^{1/p}.
fair::FairProfile filter(const FractionalSolution& sol,
                         const MetricInstance& inst, const RadiusGrid& grid,
                         int p);

/// Markov form of the integral constraint: U_v >= rho^p (1 - y(v, rho)),
/// within tau_markov = n * tau_lp * R_max^p.
bool markov_check(const FractionalSolution& sol, const RadiusGrid& grid, int v,
                  double rho, int p);

/// Round-or-cut step for continuous (k,p)-clustering; certified factor
/// 2^{2p+1} (32 for k-means, 8 for k-median).
RoundOutcome attempt_round(const FractionalSolution& sol,
                           const MetricInstance& inst, const ProblemSpec& spec,
                           const RadiusGrid& grid, double opt_g);

}  // namespace contclust::kp
