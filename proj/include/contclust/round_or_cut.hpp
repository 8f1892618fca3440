#pragma once

#include "contclust/grid.hpp"
#include "contclust/lp_model.hpp"
#include "contclust/solution.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace contclust {

struct SolveConfig {
  GridConfig grid;
  double bisect_rel = 1e-5;  // terminate when hi <= (1 + rel) lo + abs
  double bisect_abs = 0.0;   // 0 -> 1e-12 * (1 + hi0)
  long long cut_cap_mult = 10;  // iteration cap 10 n |grid|
  // Test hook, called after every LP solve with the pool that produced it.
  std::function<void(const ConstraintPool&, const FractionalSolution&)>
      observer;
};

struct TraceRow {
  double opt_g = 0.0;
  int iterations = 0;
  int cuts_added = 0;
  std::string status;
  double cost = 0.0;  // accepted cost, NaN otherwise
};

struct SearchTrace {
  std::vector<TraceRow> rows;
  double chosen_opt_g = 0.0;
  int total_cuts = 0;
  void write_csv(std::ostream& os) const;
};

struct IterateResult {
  enum class Status { Accepted, Infeasible, CutLimitExceeded };
  Status status = Status::CutLimitExceeded;
  Solution solution;
  int iterations = 0;
  int cuts_added = 0;
};

using RoundOracle =
    std::function<RoundOutcome(const FractionalSolution&, double opt_g)>;

/// Inner loop at a fixed guess: solve the pool LP, hand the point to the
/// rounding oracle, admit the returned cut and repeat. Every non-terminal
/// iteration adds a cut with a new canonical key. `seed_cuts` are re-added
/// to the fresh pool (used to retain FAIR/KCWO cuts across guesses).
IterateResult iterate(const MetricInstance& inst, const ProblemSpec& spec,
                      const RadiusGrid& grid, double opt_g,
                      const RoundOracle& oracle, const SolveConfig& cfg,
                      std::vector<SepCut>* seed_cuts = nullptr);

struct SearchResult {
  enum class Status { Solved, Infeasible, LimitExceeded };
  Status status = Status::LimitExceeded;
  Solution solution;  // raw (unscaled) units
  SearchTrace trace;
};

/// Outer search. Sum-objective kinds bisect the optimum guess; KCWO walks
/// the candidate value list {d(v,x)/2, d(v,x)} ascending and returns the
/// first accepted guess. The instance is rescaled internally; all reported
/// costs and guesses are in the original units.
SearchResult search(const MetricInstance& inst, const ProblemSpec& spec,
                    const SolveConfig& cfg = {});

}  // namespace contclust
