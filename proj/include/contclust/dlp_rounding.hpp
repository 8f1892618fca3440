#pragma once

#include "contclust/lp_model.hpp"

#include <vector>

namespace contclust {

/// Consolidated representative LP: each representative j keeps its child
/// count w_j, its nearest other representative s(j) at distance c_j, and the
/// ball mass z_j in [1/2, 1] moved onto it. Assignment is supported on
/// {j, s(j)} with x_{jj} = z_j.
struct DlpInput {
  std::vector<int> reps;       // client local indices
  std::vector<double> weight;  // w_j = |child(j)|
  std::vector<int> neighbor;   // s(j), as an index into reps
  std::vector<double> ndist;   // c_j = d(j, s(j))
  std::vector<double> mass;    // z_j
  int k = 0;
  int p = 1;

  std::size_t size() const { return reps.size(); }
  double assign_cost() const;  // sum_j w_j (1 - z_j) c_j^p
};

struct DlpSolution {
  std::vector<char> open;    // per rep
  std::vector<int> assign;   // per rep: itself or neighbor (rep position)
  int opened = 0;
  double cost = 0.0;         // sum_j w_j d(j, assigned)^p
};

struct CycleNotPair : std::runtime_error {
  CycleNotPair() : std::runtime_error("forest component cycle is not a pair") {}
};

/// Raises masses toward 1 in rep-index order until their sum is the integer
/// min(k, |reps|). Per-rep assignment cost never increases.
DlpInput pad(DlpInput in);

/// Algorithm mass transfer to a {1/2, 1}-integral vector: repeatedly move
/// mass from the rep with the smallest w_j c_j^p onto the largest until every
/// mass is 1/2 or 1. Preserves the sum exactly and never increases the
/// weighted assignment cost; masses equal to 1 stay 1.
std::vector<double> round_half(const DlpInput& in);

/// Opens all mass-1 reps, strips reps whose neighbor is open, then splits the
/// remaining functional graph into trees rooted at mutual nearest pairs and
/// opens one level-parity class per tree (fewer reps first, cost tie-break).
/// Guarantees |S| <= k, j-or-s(j) coverage, and per-rep cost at most twice
/// the half-integral assignment cost.
DlpSolution round_forest(const DlpInput& in,
                         const std::vector<double>& half_mass);

}  // namespace contclust
