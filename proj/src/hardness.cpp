#include "contclust/hardness.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>

namespace contclust::hardness {

bool Graph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::find(edges.begin(), edges.end(), std::make_pair(u, v)) !=
         edges.end();
}

Graph parse_edge_list(std::istream& is) {
  Graph g;
  std::set<std::pair<int, int>> seen;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    int u, v;
    if (!(ls >> u >> v)) continue;
    if (u == v) throw std::runtime_error("self loop in edge list");
    if (u > v) std::swap(u, v);
    g.n = std::max(g.n, v + 1);
    if (seen.insert({u, v}).second) g.edges.push_back({u, v});
  }
  return g;
}

EmbeddedInstance embed(const Graph& g, double eps,
                       const std::vector<std::vector<int>>* parts) {
  const int n = g.n;
  const int m = static_cast<int>(g.edges.size());
  EmbeddedInstance out;
  out.n_clients = n;
  out.lambda = eps * n;

  int rows = n + 1 + (parts ? static_cast<int>(parts->size()) : 0);
  out.points = Eigen::MatrixXd::Zero(rows, m);
  for (int e = 0; e < m; ++e) {
    out.points(g.edges[e].first, e) = 2.0;
    out.points(g.edges[e].second, e) = -2.0;
  }

  int row = n;
  if (parts) {
    for (const auto& part : *parts) {
      std::set<int> members(part.begin(), part.end());
      for (int e = 0; e < m; ++e) {
        auto [u, v] = g.edges[e];
        if (members.count(u) && members.count(v))
          throw NotIndependent("part contains an edge");
        if (members.count(u)) out.points(row, e) = 1.0;
        else if (members.count(v)) out.points(row, e) = -1.0;
      }
      ++row;
    }
  }
  // Coordinate-wise median of the clients, a cheap probe facility for the
  // (partial) lower-bound checks.
  for (int e = 0; e < m; ++e) {
    std::vector<double> col(n);
    for (int v = 0; v < n; ++v) col[v] = out.points(v, e);
    std::nth_element(col.begin(), col.begin() + n / 2, col.end());
    out.points(row, e) = col[n / 2];
  }

  out.inst.dist = Eigen::MatrixXd::Zero(rows, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = i + 1; j < rows; ++j) {
      double d = m > 0 ? (out.points.row(i) - out.points.row(j))
                             .cwiseAbs()
                             .maxCoeff()
                       : 0.0;
      out.inst.dist(i, j) = d;
      out.inst.dist(j, i) = d;
    }
  for (int v = 0; v < n; ++v) out.inst.clients.push_back(v);
  for (int i = 0; i < rows; ++i) out.inst.candidate_points.push_back(i);
  return out;
}

CompletenessResult completeness_solution(
    const Graph& g, double eps, const std::vector<std::vector<int>>& parts) {
  const int n = g.n;
  EmbeddedInstance emb = embed(g, eps, &parts);
  const int m = static_cast<int>(g.edges.size());

  CompletenessResult res;
  res.facilities = emb.points.block(n, 0, parts.size(), m);

  std::vector<int> part_of(n, -1);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (int v : parts[i]) part_of[v] = static_cast<int>(i);

  for (int v = 0; v < n; ++v) {
    double best = kInf;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      double d = emb.inst.dist(v, n + static_cast<int>(i));
      if (part_of[v] == static_cast<int>(i) && d > 1.0 + 1e-12)
        throw std::runtime_error("own-part client beyond distance 1");
      if (d > 3.0 + 1e-12)
        throw std::runtime_error("client beyond distance 3 of a facility");
      best = std::min(best, d);
    }
    res.connection_cost += best;
  }
  res.total_cost = 4.0 * emb.lambda + res.connection_cost;

  bool all_large = parts.size() == 4;
  for (const auto& part : parts)
    all_large = all_large &&
                static_cast<double>(part.size()) >= (1.0 - eps) * n / 4.0;
  if (all_large && res.total_cost > (1.0 + 6.0 * eps) * n + 1e-9)
    throw std::runtime_error("completeness cost exceeds (1+6eps)n");
  return res;
}

std::vector<std::pair<int, int>> greedy_matching(const Graph& g,
                                                 const std::vector<int>& w,
                                                 double eps_prime,
                                                 bool no_large_is) {
  std::set<int> alive(w.begin(), w.end());
  const double floor_size = eps_prime * g.n;
  std::vector<std::pair<int, int>> matching;
  while (static_cast<double>(alive.size()) >= floor_size) {
    std::pair<int, int> pick{-1, -1};
    for (const auto& e : g.edges)
      if (alive.count(e.first) && alive.count(e.second)) {
        if (pick.first < 0 || e < pick) pick = e;
      }
    if (pick.first < 0) break;
    matching.push_back(pick);
    alive.erase(pick.first);
    alive.erase(pick.second);
  }
  if (no_large_is) {
    double need = (static_cast<double>(w.size()) - eps_prime * g.n) / 2.0;
    if (static_cast<double>(matching.size()) < need - 1e-9)
      throw std::runtime_error("greedy matching below certified size");
  }
  return matching;
}

namespace {

int max_matching_rec(const Graph& g, std::set<int>& alive) {
  int v = -1;
  for (int u : alive) {
    for (const auto& e : g.edges)
      if ((e.first == u && alive.count(e.second)) ||
          (e.second == u && alive.count(e.first))) {
        v = u;
        break;
      }
    if (v >= 0) break;
  }
  if (v < 0) return 0;

  alive.erase(v);
  int best = max_matching_rec(g, alive);  // leave v unmatched
  for (const auto& e : g.edges) {
    int other = -1;
    if (e.first == v && alive.count(e.second)) other = e.second;
    if (e.second == v && alive.count(e.first)) other = e.first;
    if (other < 0) continue;
    alive.erase(other);
    best = std::max(best, 1 + max_matching_rec(g, alive));
    alive.insert(other);
  }
  alive.insert(v);
  return best;
}

}  // namespace

int max_matching_bruteforce(const Graph& g, const std::vector<int>& w) {
  std::set<int> alive(w.begin(), w.end());
  return max_matching_rec(g, alive);
}

Graph random_planted_4partite(int n, int extra_edges, std::mt19937& rng,
                              std::vector<std::vector<int>>* parts_out) {
  Graph g;
  g.n = n;
  std::vector<int> part_of(n);
  std::vector<std::vector<int>> parts(4);
  for (int v = 0; v < n; ++v) {
    part_of[v] = v % 4;
    parts[v % 4].push_back(v);
  }

  std::set<std::pair<int, int>> edges;
  auto add_edge = [&](int u, int v) {
    if (u == v || part_of[u] == part_of[v]) return false;
    if (u > v) std::swap(u, v);
    return edges.insert({u, v}).second;
  };

  auto rnd = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
  };
  for (int v = 0; v < n; ++v) {
    for (int tries = 0; tries < 64; ++tries) {
      int u = rnd(0, n - 1);
      if (add_edge(v, u)) break;
    }
  }
  for (int e = 0; e < extra_edges; ++e) {
    int u = rnd(0, n - 1), v = rnd(0, n - 1);
    add_edge(u, v);
  }
  // No isolated vertices: own-part distance bounds in the completeness
  // check rely on every client having an incident edge column.
  std::vector<int> degree(n, 0);
  for (const auto& e : edges) {
    ++degree[e.first];
    ++degree[e.second];
  }
  for (int v = 0; v < n; ++v)
    if (degree[v] == 0)
      for (int u = 0; u < n; ++u)
        if (add_edge(v, u)) {
          ++degree[v];
          ++degree[u];
          break;
        }
  g.edges.assign(edges.begin(), edges.end());
  if (parts_out) *parts_out = parts;
  return g;
}

}  // namespace contclust::hardness
