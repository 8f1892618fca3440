#include "contclust/dlp_rounding.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace contclust {

namespace {
constexpr double kHalfTol = 1e-9;

double comp_key(const DlpInput& in, std::size_t j) {
  return in.weight[j] * std::pow(in.ndist[j], in.p);
}
}  // namespace

double DlpInput::assign_cost() const {
  double total = 0.0;
  for (std::size_t j = 0; j < size(); ++j)
    total += weight[j] * (1.0 - mass[j]) * std::pow(ndist[j], p);
  return total;
}

DlpInput pad(DlpInput in) {
  const int target =
      std::min<int>(in.k, static_cast<int>(in.size()));
  double sum = std::accumulate(in.mass.begin(), in.mass.end(), 0.0);
  if (sum > target) {
    // At most tau_cut of excess can arrive from an approximately tight Sep.
    double excess = sum - target;
    if (excess > 1e-4) throw InvariantBreach("pad: mass sum exceeds budget");
    for (std::size_t j = in.size(); j-- > 0 && excess > 0.0;) {
      double take = std::min(excess, in.mass[j] - 0.5);
      if (take > 0.0) {
        in.mass[j] -= take;
        excess -= take;
      }
    }
    return in;
  }
  double deficit = target - sum;
  for (std::size_t j = 0; j < in.size() && deficit > 1e-15; ++j) {
    double add = std::min(deficit, 1.0 - in.mass[j]);
    in.mass[j] += add;
    deficit -= add;
  }
  return in;
}

std::vector<double> round_half(const DlpInput& in) {
  const std::size_t n = in.size();
  std::vector<double> z = in.mass;
  double sum0 = std::accumulate(z.begin(), z.end(), 0.0);
  if (std::abs(sum0 - std::round(sum0)) > 1e-6)
    throw InvariantBreach("round_half: mass sum is not integral");
  for (double m : z)
    if (m < 0.5 - kHalfTol || m > 1.0 + kHalfTol)
      throw InvariantBreach("round_half: mass outside [1/2, 1]");

  auto strict = [&](std::size_t j) {
    return z[j] > 0.5 + kHalfTol && z[j] < 1.0 - kHalfTol;
  };
  auto psi = [&] {
    double s = 0.0;
    for (double m : z) s += std::max(m - 0.5, 1.0 - m);
    return s;
  };

  std::size_t guard = 0;
  while (true) {
    std::size_t j1 = n, j2 = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (!strict(j)) continue;
      if (j1 == n || comp_key(in, j) < comp_key(in, j1)) j1 = j;
      if (j2 == n || comp_key(in, j) > comp_key(in, j2) ||
          (comp_key(in, j) == comp_key(in, j2) && j > j2))
        j2 = j;
    }
    if (j1 == n) break;
    if (j1 == j2) throw InvariantBreach("round_half: lone fractional mass");

    double psi_before = psi();
    // Mass moves off the cheap rep onto the expensive one, so the weighted
    // assignment cost cannot increase.
    double delta = std::min(z[j1] - 0.5, 1.0 - z[j2]);
    z[j1] -= delta;
    z[j2] += delta;
    if (psi() >= psi_before - 1e-12)
      throw InvariantBreach("round_half: potential did not decrease");
    if (++guard > 2 * n + 4)
      throw InvariantBreach("round_half: iteration guard tripped");
  }

  for (double& m : z) m = (m > 0.75) ? 1.0 : 0.5;
  double sum1 = std::accumulate(z.begin(), z.end(), 0.0);
  if (std::abs(sum1 - sum0) > 1e-6)
    throw InvariantBreach("round_half: sum not preserved");
  return z;
}

DlpSolution round_forest(const DlpInput& in,
                         const std::vector<double>& half_mass) {
  const int n = static_cast<int>(in.size());
  DlpSolution out;
  out.open.assign(n, 0);
  out.assign.assign(n, -1);

  auto is_one = [&](int j) { return half_mass[j] > 0.75; };

  std::vector<int> forest;
  for (int j = 0; j < n; ++j) {
    if (is_one(j)) {
      out.open[j] = 1;
      out.assign[j] = j;
    } else if (n == 1) {
      throw InvariantBreach("round_forest: singleton rep with half mass");
    } else if (is_one(in.neighbor[j])) {
      out.assign[j] = in.neighbor[j];
    } else {
      forest.push_back(j);
    }
  }

  // Remaining reps form a functional graph j -> s(j) inside `forest`; every
  // cycle is a mutual nearest pair under the strict (distance, index) order.
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int j : forest) {
    if (comp[j] >= 0) continue;
    std::deque<int> stack = {j};
    comp[j] = ncomp;
    while (!stack.empty()) {
      int x = stack.front();
      stack.pop_front();
      int sx = in.neighbor[x];
      if (comp[sx] < 0) {
        comp[sx] = ncomp;
        stack.push_back(sx);
      }
      for (int y : forest)
        if (comp[y] < 0 && in.neighbor[y] == x) {
          comp[y] = ncomp;
          stack.push_back(y);
        }
    }
    ++ncomp;
  }

  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> nodes;
    for (int j : forest)
      if (comp[j] == c) nodes.push_back(j);

    int pair_lo = -1, pairs = 0;
    for (int j : nodes)
      if (in.neighbor[in.neighbor[j]] == j && j < in.neighbor[j]) {
        ++pairs;
        if (pair_lo < 0) pair_lo = j;
      }
    if (pairs != 1) throw CycleNotPair();

    const int root = in.neighbor[pair_lo];  // edge (root -> pair_lo) dropped
    std::vector<int> level(n, -1);
    level[root] = 0;
    std::deque<int> bfs = {root};
    while (!bfs.empty()) {
      int x = bfs.front();
      bfs.pop_front();
      for (int y : nodes)
        if (level[y] < 0 && in.neighbor[y] == x && y != root) {
          level[y] = level[x] + 1;
          bfs.push_back(y);
        }
    }

    auto side_stats = [&](int parity) {
      int count = 0;
      double cost = 0.0;
      for (int j : nodes) {
        if (level[j] % 2 == parity) ++count;
        else cost += comp_key(in, j);  // j assigned to s(j)
      }
      return std::pair<int, double>(count, cost);
    };
    auto [odd_n, odd_cost] = side_stats(1);
    auto [even_n, even_cost] = side_stats(0);
    int parity;
    if (odd_n != even_n) parity = odd_n < even_n ? 1 : 0;
    else parity = odd_cost <= even_cost ? 1 : 0;

    for (int j : nodes) {
      if (level[j] % 2 == parity) {
        out.open[j] = 1;
        out.assign[j] = j;
      } else {
        out.assign[j] = in.neighbor[j];
      }
    }
  }

  for (int j = 0; j < n; ++j) {
    if (!out.open[j] && !out.open[in.neighbor[j]] && n > 1)
      throw InvariantBreach("round_forest: rep has neither j nor s(j) open");
    out.cost += in.weight[j] *
                std::pow(out.open[j] ? 0.0 : in.ndist[j], in.p);
    out.opened += out.open[j];
  }
  if (out.opened > in.k)
    throw InvariantBreach("round_forest: opened more than k centers");
  return out;
}

}  // namespace contclust
