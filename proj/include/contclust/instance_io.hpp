#pragma once

#include "contclust/grid.hpp"
#include "contclust/metric.hpp"
#include "contclust/solution.hpp"

#include <random>
#include <string>
#include <vector>

namespace contclust::io {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// On-disk instance document. The metric is either an explicit matrix or
/// lp-norm points; lp-norm points are materialized into a distance matrix at
/// load time and downstream code only ever sees the matrix.
struct InstanceFile {
  std::string metric_type = "lp_norm";  // "explicit" | "lp_norm"
  Eigen::MatrixXd matrix;               // explicit
  std::string norm_p = "2";             // "1" | "2" | "inf"
  Eigen::MatrixXd points;               // lp_norm, one row per point
  std::vector<int> clients;
  ProblemSpec problem;
  GridConfig config;
  unsigned seed = 0;
  bool has_config = false;

  MetricInstance to_instance() const;

  static InstanceFile parse(const std::string& text);
  std::string serialize() const;
};

struct SolutionFile {
  std::vector<int> centers;     // point indices
  std::vector<int> assignment;  // per client: serving center (point index)
  std::vector<int> served;      // KCWO: point indices of served clients
  double cost = 0.0;
  double opt_g_used = 0.0;
  double factor_bound = 0.0;
  bool fairness_ok = true;
  int cuts_added = 0;
  int iterations = 0;

  static SolutionFile parse(const std::string& text);
  std::string serialize() const;

  static SolutionFile from_solution(const MetricInstance& inst,
                                    const Solution& sol);
};

/// Uniform points in [0,1]^dim, first n rows are the clients, `extra` more
/// candidate-only points. Deterministic under the seed.
InstanceFile gen_random(ProblemKind kind, int n, int dim,
                        const std::string& norm, int extra, unsigned seed,
                        int k, int p, double lambda, int m);

double uniform01(std::mt19937& rng);

}  // namespace contclust::io
