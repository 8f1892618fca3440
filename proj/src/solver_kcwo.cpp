#include "contclust/solver_kcwo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace contclust::kcwo {

CovProfile build_profile(const FractionalSolution& sol,
                         const MetricInstance& inst, double opt_g, int k) {
  const int n = inst.client_count();
  CovProfile prof;
  prof.rep_of.assign(n, -1);

  std::vector<char> uncovered(n, 1);
  int left = n;
  while (left > 0) {
    int i = -1;
    for (int v = 0; v < n; ++v)
      if (uncovered[v] && (i < 0 || sol.cov[v] > sol.cov[i])) i = v;
    std::vector<int> kids;
    for (int v = 0; v < n; ++v)
      if (uncovered[v] && inst.dc(v, i) <= 2.0 * opt_g) {
        kids.push_back(v);
        uncovered[v] = 0;
        prof.rep_of[v] = static_cast<int>(prof.reps.size());
        --left;
      }
    prof.reps.push_back(i);
    prof.child.push_back(std::move(kids));
  }

  const int nr = static_cast<int>(prof.reps.size());
  std::vector<int> order(nr);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return prof.child[a].size() > prof.child[b].size();
  });
  for (int i = 0; i < std::min(k, nr); ++i) {
    prof.s_cov.push_back(order[i]);
    prof.served += static_cast<long long>(prof.child[order[i]].size());
  }
  std::sort(prof.s_cov.begin(), prof.s_cov.end());
  return prof;
}

bool weighted_average_argument(const std::vector<long long>& child_sizes,
                               const std::vector<double>& rep_cov, int k,
                               int m) {
  double cov_total = 0.0, weighted = 0.0;
  for (std::size_t i = 0; i < child_sizes.size(); ++i) {
    cov_total += rep_cov[i];
    weighted += static_cast<double>(child_sizes[i]) * rep_cov[i];
  }
  if (cov_total > k + 1e-6 || weighted < m - 1e-6) return false;

  auto sorted = child_sizes;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  long long top = 0;
  for (int i = 0; i < std::min<int>(k, sorted.size()); ++i) top += sorted[i];
  return top >= m;
}

RoundOutcome attempt_round(const FractionalSolution& sol,
                           const MetricInstance& inst, const ProblemSpec& spec,
                           const RadiusGrid& grid, double opt_g) {
  (void)grid;
  CovProfile prof = build_profile(sol, inst, opt_g, spec.k);
  const int n = inst.client_count();

  if (prof.served >= spec.m) {
    Solution out;
    for (int ji : prof.s_cov) out.centers.push_back(prof.reps[ji]);

    // Serve exactly m clients: drop the smallest-cov children first.
    std::vector<int> pool;
    for (int ji : prof.s_cov)
      for (int v : prof.child[ji]) pool.push_back(v);
    std::stable_sort(pool.begin(), pool.end(), [&](int a, int b) {
      return sol.cov[a] > sol.cov[b] || (sol.cov[a] == sol.cov[b] && a < b);
    });
    pool.resize(spec.m);
    std::sort(pool.begin(), pool.end());
    out.served = pool;

    out.assignment.resize(n);
    out.radius = 0.0;
    for (int v = 0; v < n; ++v) {
      int c = out.centers[0];
      for (int j : out.centers)
        if (inst.dc(v, j) < inst.dc(v, c)) c = j;
      out.assignment[v] = c;
    }
    for (int v : out.served)
      out.radius = std::max(out.radius, inst.dc(v, out.assignment[v]));
    if (out.radius > 2.0 * opt_g)
      throw InvariantBreach("served client beyond twice the guess");
    out.cost = out.radius;
    out.cert.opt_g_used = opt_g;
    out.cert.factor_bound = 2.0;
    return RoundOutcome::accept(std::move(out));
  }

  SepCut cut;
  cut.family = CutFamily::KCWO;
  cut.k = spec.k;
  double ysum = 0.0;
  for (int ji = 0; ji < static_cast<int>(prof.reps.size()); ++ji) {
    cut.balls.push_back({prof.reps[ji], opt_g});
    ysum += sol.y_at(prof.reps[ji], opt_g);
  }
  std::sort(cut.balls.begin(), cut.balls.end());
  double viol = ysum - spec.k;
  const double gate = std::max(kTauCut, 10.0 * kTauLp * std::max(1, spec.k));
  if (viol <= gate) {
    std::ostringstream os;
    os << "coverage shortfall (" << prof.served << " < m=" << spec.m
       << ") but Sep violation is only " << viol;
    throw InvariantBreach(os.str());
  }
  return RoundOutcome::make_cut(cut, viol);
}

}  // namespace contclust::kcwo
