#pragma once

#include "contclust/metric.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <random>
#include <vector>

namespace contclust::hardness {

struct NotIndependent : std::runtime_error {
  explicit NotIndependent(const std::string& what)
      : std::runtime_error(what) {}
};

/// Graph with a fixed orientation: each edge stored (low, high), unique.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  bool has_edge(int u, int v) const;
};

/// Parses "u v" per line, 0-indexed; orientation low -> high.
Graph parse_edge_list(std::istream& is);

/// Clients A(v) in R^{|E|} with l_inf distances; adjacent vertices end up at
/// distance 4, others at most 2. The candidate set holds the clients, the
/// part facilities s_1..s_4 when parts are given, and the coordinate-wise
/// median as a cheap extra facility for partial lower-bound probes.
struct EmbeddedInstance {
  MetricInstance inst;
  Eigen::MatrixXd points;  // one row per candidate point, |E| columns
  double lambda = 0.0;     // eps * n
  int n_clients = 0;
};

EmbeddedInstance embed(const Graph& g, double eps,
                       const std::vector<std::vector<int>>* parts = nullptr);

struct CompletenessResult {
  Eigen::MatrixXd facilities;  // 4 rows
  double connection_cost = 0.0;
  double total_cost = 0.0;  // 4 lambda + connection
};

/// Builds the four part facilities and certifies the per-client distance
/// bounds (1 inside the own part, 3 otherwise) and, when every part has at
/// least (1-eps) n / 4 vertices, total cost at most (1 + 6 eps) n.
CompletenessResult completeness_solution(
    const Graph& g, double eps, const std::vector<std::vector<int>>& parts);

/// Greedy matching inside G[W], removing matched endpoints, stopping when
/// fewer than eps_prime * n vertices remain or no edge is left. With
/// `no_large_is` set the caller asserts G[W] never retains an independent
/// set of eps_prime * n residual vertices, so |M| >= (|W| - eps_prime n)/2.
std::vector<std::pair<int, int>> greedy_matching(const Graph& g,
                                                 const std::vector<int>& w,
                                                 double eps_prime,
                                                 bool no_large_is = false);

/// Exact maximum matching by branching; intended for graphs up to ~12
/// vertices (test reference).
int max_matching_bruteforce(const Graph& g, const std::vector<int>& w);

/// Random 4-partite graph with a planted independent 4-partition; every
/// vertex receives at least one cross-part edge.
Graph random_planted_4partite(int n, int extra_edges, std::mt19937& rng,
                              std::vector<std::vector<int>>* parts_out);

}  // namespace contclust::hardness
