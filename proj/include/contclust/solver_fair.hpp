#pragma once

#include "contclust/dlp_rounding.hpp"
#include "contclust/grid.hpp"
#include "contclust/solution.hpp"

#include <optional>
#include <vector>

namespace contclust::fair {

/// Filtering outcome shared by the fair k-median and (k,p) pipelines:
/// greedily picked representatives under the radius function R, each rep's
/// nearest other rep s(j) and half distance a(j). `a_read` is the grid
/// radius just below a(j) used by cuts and mass reads (strictly disjoint
/// balls; identical completion value until a cut splits the interval).
struct FairProfile {
  std::vector<double> R;
  std::vector<int> reps;  // pick order, client indices
  std::vector<std::vector<int>> child;
  std::vector<int> rep_of;  // per client: position in reps
  std::vector<int> s;       // per rep: neighbor position (-1 for singleton)
  std::vector<double> a;    // d(j, s(j)) / 2; R_max(j) for a singleton
  std::vector<double> a_read;
};

/// Greedy min-R filtering with child rule d(v, j) <= 2 R(v).
FairProfile filter_with_radii(const MetricInstance& inst,
                              const RadiusGrid& grid,
                              const std::vector<double>& R);

/// R(v) = min(r(v), 2 C_v).
FairProfile filter(const FractionalSolution& sol, const MetricInstance& inst,
                   const ProblemSpec& spec, const RadiusGrid& grid);

/// FAIR cut over the representative balls when sum_j y(j, a(j)) > k or
/// |Reps| > 2k; nullopt when the Sep constraint holds.
std::optional<RoundOutcome> separate(const FractionalSolution& sol,
                                     const MetricInstance& inst,
                                     const FairProfile& prof, int k);

/// Moves the ball mass inside each representative's half-distance ball onto
/// the representative: z_j = min(y(j, a(j)), 1), assignment on {j, s(j)}.
DlpInput consolidate(const FractionalSolution& sol, const MetricInstance& inst,
                     const FairProfile& prof, int k, int p);

/// Shared sep -> consolidate -> pad -> half-integral -> forest pipeline;
/// used with p = 1 by the fair oracle and general p by the (k,p) oracle.
RoundOutcome round_profile(const FractionalSolution& sol,
                           const MetricInstance& inst, const RadiusGrid& grid,
                           const FairProfile& prof, double opt_g, int k, int p,
                           double factor);

RoundOutcome attempt_round(const FractionalSolution& sol,
                           const MetricInstance& inst, const ProblemSpec& spec,
                           const RadiusGrid& grid, double opt_g);

struct CertificateFailure : std::runtime_error {
  explicit CertificateFailure(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace contclust::fair
