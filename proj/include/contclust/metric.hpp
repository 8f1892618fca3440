#pragma once

#include <Eigen/Dense>

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace contclust {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ProblemKind { UFL, FairKMedian, KP, KCWO };

std::string to_string(ProblemKind kind);

/// Finite representation of the metric space (X, d): a point set with an
/// explicit distance matrix, a distinguished client subset C, and the full
/// candidate point list standing in for X.
struct MetricInstance {
  Eigen::MatrixXd dist;                 // point x point, symmetric
  std::vector<int> clients;             // ordered ids into dist (the set C)
  std::vector<int> candidate_points;    // all ids, superset of clients

  int point_count() const { return static_cast<int>(dist.rows()); }
  int client_count() const { return static_cast<int>(clients.size()); }

  double d(int i, int j) const { return dist(i, j); }

  // Distance between clients addressed by their position in `clients`.
  double dc(int vi, int vj) const { return dist(clients[vi], clients[vj]); }
};

struct ProblemSpec {
  ProblemKind kind = ProblemKind::KP;
  double lambda = 0.0;            // UFL only
  int k = 0;                      // non-UFL
  std::vector<double> radii;      // FairKMedian: per client, may be kInf
  int p = 1;                      // KP: 1 = k-median, 2 = k-means
  int m = 0;                      // KCWO: clients to serve

  int power() const { return kind == ProblemKind::KP ? p : 1; }
};

/// Checks the MetricInstance invariants. Returns an empty list iff the
/// instance is a valid metric; each violation names the offending indices.
std::vector<std::string> validate_metric(const MetricInstance& inst);

struct RescaleResult {
  MetricInstance instance;   // distances scaled so min positive client gap is 1
  double scale = 1.0;        // d' = scale * d
  double aspect_ratio = 1.0; // max client distance after scaling
  bool aspect_warning = false;
};

struct AllCoincident : std::runtime_error {
  AllCoincident() : std::runtime_error("all client pairs are at distance zero") {}
};

/// Uniformly rescales so the minimum positive client-client distance is 1 and
/// reports the aspect ratio. Throws AllCoincident when no positive client
/// distance exists. Single-client instances are returned unchanged.
RescaleResult rescale(const MetricInstance& inst);

/// Diameter of the client set (0 for a single client).
double client_diameter(const MetricInstance& inst);

}  // namespace contclust
