#pragma once

#include "contclust/grid.hpp"
#include "contclust/solution.hpp"

#include <vector>

namespace contclust::kcwo {

/// Greedy max-coverage rounding state: representatives picked by maximum
/// cov value, child sets at radius 2 opt_g, and the k largest child sets.
struct CovProfile {
  std::vector<int> reps;  // pick order
  std::vector<std::vector<int>> child;
  std::vector<int> rep_of;  // per client: rep position
  std::vector<int> s_cov;   // rep positions chosen for opening
  long long served = 0;     // sum of chosen child sizes
};

CovProfile build_profile(const FractionalSolution& sol,
                         const MetricInstance& inst, double opt_g, int k);

/// True iff the k largest child sizes sum to at least m; cross-checks the
/// averaging premises sum cov_i <= k (over reps) and sum cov_v >= m.
bool weighted_average_argument(const std::vector<long long>& child_sizes,
                               const std::vector<double>& rep_cov, int k,
                               int m);

/// Accepts with the k best representatives and exactly m served clients at
/// radius <= 2 opt_g, or returns the violated coverage cut.
RoundOutcome attempt_round(const FractionalSolution& sol,
                           const MetricInstance& inst, const ProblemSpec& spec,
                           const RadiusGrid& grid, double opt_g);

}  // namespace contclust::kcwo
