#pragma once

#include "contclust/metric.hpp"
#include "contclust/solution.hpp"

#include <string>
#include <vector>

namespace contclust {

/// Exhaustive minimum over center subsets of the candidate point set.
struct ExactResult {
  enum class Status { Solved, Infeasible, TooLarge };
  Status status = Status::TooLarge;
  std::vector<int> centers;  // point ids
  double value = 0.0;
  long long enumerated = 0;
};

/// d(v, S) for center point ids, minimum over S.
double dist_to_set(const MetricInstance& inst, int client_local,
                   const std::vector<int>& center_points);

/// Objective of a center set: lambda|S| + sum d for UFL, sum d^p for KP and
/// fair k-median, m-th smallest client distance for KCWO.
double evaluate_centers(const MetricInstance& inst, const ProblemSpec& spec,
                        const std::vector<int>& center_points);

bool fair_feasible(const MetricInstance& inst, const ProblemSpec& spec,
                   const std::vector<int>& center_points);

/// Brute-force optimum. Enumeration budget: C(|X|, k) combinations for the
/// cardinality kinds, all subset sizes 1..min(|X|, n) for UFL.
ExactResult exact_solve(const MetricInstance& inst, const ProblemSpec& spec,
                        long long budget = 10000000LL);

/// Report-style certification: recomputes every cost from raw distances and
/// checks the kind's factor inequality against opt_g, fairness bounds,
/// |S| <= k and the served count. Empty report = all checks pass.
/// `slack` widens the factor inequality (grid slack for UFL).
std::vector<std::string> certify(const MetricInstance& inst,
                                 const ProblemSpec& spec,
                                 const Solution& solution, double opt_g,
                                 double slack = 0.0);

}  // namespace contclust
