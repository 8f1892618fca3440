#pragma once

#include "contclust/metric.hpp"

#include <optional>
#include <vector>

namespace contclust {

struct GridConfig {
  double eps_grid = 0.0;  // 0 -> 1/n^2
  double eps_abs = 0.0;   // 0 -> 1e-6 (post-rescale units)

  double effective_eps_grid(int n) const {
    if (eps_grid > 0.0) return eps_grid;
    int nn = std::max(n, 2);
    return 1.0 / (static_cast<double>(nn) * nn);
  }
  double effective_eps_abs(int) const {
    return eps_abs > 0.0 ? eps_abs : 1e-6;
  }
};

/// Per-client radius discretization. `radii[v]` is the strictly increasing
/// list 0 = rho_0 < ... < rho_T = R_max(v) containing every client-client
/// distance, every half pairwise distance, the fairness radius when finite,
/// any extra radii, and mesh points so that consecutive gaps obey
/// rho_{t+1} <= (1+eps_grid) rho_t + eps_abs.
struct RadiusGrid {
  std::vector<std::vector<double>> radii;  // per client (local index)
  std::vector<double> r_max;               // per client
  double eps_grid = 0.0;
  double eps_abs = 0.0;

  // Smallest grid radius >= x for client v, or nullopt when x > R_max(v).
  std::optional<double> succ(int v, double x) const;

  // Smallest grid radius strictly greater than x (nullopt beyond R_max).
  std::optional<double> succ_strict(int v, double x) const;

  // Largest grid radius strictly below x (0 when none).
  double pred_strict(int v, double x) const;

  // Largest gap between consecutive radii in [0, hi] for client v.
  double max_gap_below(int v, double hi) const;

  bool contains(int v, double rho) const;

  std::size_t size(int v) const { return radii[v].size(); }
};

/// Builds the radius grid for a (rescaled) instance. `extra` radii are
/// included verbatim in every client's list (clipped to [0, R_max]).
RadiusGrid build_grid(const MetricInstance& inst, const ProblemSpec& spec,
                      const GridConfig& cfg,
                      const std::vector<double>& extra = {});

/// R_max used by build_grid, exposed for tests and the search driver.
std::vector<double> grid_r_max(const MetricInstance& inst,
                               const ProblemSpec& spec);

}  // namespace contclust
