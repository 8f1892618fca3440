#pragma once

#include "contclust/grid.hpp"
#include "contclust/solution.hpp"

#include <vector>

namespace contclust::ufl {

struct NoRadius : std::runtime_error {
  explicit NoRadius(const std::string& what) : std::runtime_error(what) {}
};

/// Filtering outcome at a fixed mass threshold alpha: per-client readout
/// radii r_alpha, the greedily picked representatives, and their child sets.
struct AlphaProfile {
  double alpha = 1.0;
  std::vector<double> r_alpha;       // per client
  std::vector<double> y_at_r_alpha;  // completion value, >= alpha
  std::vector<int> reps;             // pick order
  std::vector<std::vector<int>> child;
  std::vector<int> rep_of;           // per client: position in reps
};

/// r_alpha(v) = smallest grid radius with y(v, rho) >= alpha, then the greedy
/// minimum-radius filtering. Throws NoRadius when even y(v, R_max) < alpha.
AlphaProfile filter(const FractionalSolution& sol, const MetricInstance& inst,
                    const RadiusGrid& grid, double alpha);

/// Sorted distinct values of y(v, rho) falling in (e^-2, 1], plus 1 itself.
/// Evaluating filter at each covers every distinct profile over that range.
std::vector<double> breakpoints(const FractionalSolution& sol);

/// Round-or-cut step: scans the breakpoints, returns the first violated
/// Sep constraint as a cut, otherwise accepts the cheapest representative
/// opening. Accepted cost is certified against (2/(1-e^-2)) opt_g plus the
/// grid-gap slack recorded in the certificate.
RoundOutcome attempt_round(const FractionalSolution& sol,
                           const MetricInstance& inst, const RadiusGrid& grid,
                           double opt_g, double lambda);

constexpr double kBeta = 0.13533528323661270;  // e^-2
constexpr double kFactor = 2.0 / (1.0 - kBeta);  // 2.3130352854993312

}  // namespace contclust::ufl
