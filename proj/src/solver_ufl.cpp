#include "contclust/solver_ufl.hpp"

#include "contclust/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace contclust::ufl {

AlphaProfile filter(const FractionalSolution& sol, const MetricInstance& inst,
                    const RadiusGrid& grid, double alpha) {
  const int n = inst.client_count();
  AlphaProfile prof;
  prof.alpha = alpha;
  prof.r_alpha.resize(n);
  prof.y_at_r_alpha.resize(n);
  prof.rep_of.assign(n, -1);

  for (int v = 0; v < n; ++v) {
    const auto& r = sol.radii[v];
    const auto& y = sol.ball[v];
    std::size_t t = 0;
    while (t < y.size() && y[t] < alpha - 1e-12) ++t;
    if (t == y.size()) {
      std::ostringstream os;
      os << "no radius with y(" << v << ",.) >= " << alpha
         << " (anchoring breach)";
      throw NoRadius(os.str());
    }
    if (t == 0) {
      prof.r_alpha[v] = r[0];
    } else {
      // The completion puts the mass arriving at r[t] just above the previous
      // materialized radius; the grid successor realizes that readout.
      auto virt = grid.succ_strict(v, r[t - 1]);
      prof.r_alpha[v] = virt ? std::min(*virt, r[t]) : r[t];
    }
    prof.y_at_r_alpha[v] = y[t];
  }

  std::vector<char> uncovered(n, 1);
  int left = n;
  while (left > 0) {
    int j = -1;
    for (int v = 0; v < n; ++v)
      if (uncovered[v] && (j < 0 || prof.r_alpha[v] < prof.r_alpha[j]))
        j = v;
    std::vector<int> kids;
    for (int v = 0; v < n; ++v)
      if (uncovered[v] &&
          inst.dc(v, j) <= prof.r_alpha[v] + prof.r_alpha[j]) {
        kids.push_back(v);
        uncovered[v] = 0;
        prof.rep_of[v] = static_cast<int>(prof.reps.size());
        --left;
      }
    prof.reps.push_back(j);
    prof.child.push_back(std::move(kids));
  }
  return prof;
}

std::vector<double> breakpoints(const FractionalSolution& sol) {
  std::set<double> vals;
  for (const auto& ys : sol.ball)
    for (double y : ys)
      if (y > kBeta && y <= 1.0) vals.insert(y);
  vals.insert(1.0);
  return {vals.begin(), vals.end()};
}

RoundOutcome attempt_round(const FractionalSolution& sol,
                           const MetricInstance& inst, const RadiusGrid& grid,
                           double opt_g, double lambda) {
  const int n = inst.client_count();
  double cost_sum = 0.0;
  for (double c : sol.cost) cost_sum += c;
  const double cut_gate =
      std::max(kTauCut, 10.0 * kTauLp * std::max(1.0, opt_g));

  Solution best;
  double best_cost = kInf;
  double best_slack = 0.0;
  std::vector<SepCut> cuts;
  std::set<std::string> cut_keys;
  double worst_viol = 0.0;

  for (double alpha : breakpoints(sol)) {
    AlphaProfile prof = filter(sol, inst, grid, alpha);

    double ysum = 0.0;
    for (int j : prof.reps) ysum += prof.y_at_r_alpha[j];
    double viol = lambda * ysum + cost_sum - opt_g;
    if (viol > cut_gate) {
      // Grow each ball to the largest grid radius that keeps the family
      // strictly disjoint: a stronger constraint of the same family, and by
      // monotonicity at least as violated as the r_alpha version.
      const int nr = static_cast<int>(prof.reps.size());
      std::vector<double> rho(nr);
      for (int ji = 0; ji < nr; ++ji) rho[ji] = prof.r_alpha[prof.reps[ji]];
      for (int ji = 0; ji < nr; ++ji) {
        int j = prof.reps[ji];
        double bound = grid.r_max[j] + 1.0;
        for (int ki = 0; ki < nr; ++ki)
          if (ki != ji)
            bound = std::min(bound, inst.dc(j, prof.reps[ki]) - rho[ki]);
        rho[ji] = std::max(rho[ji], grid.pred_strict(j, bound));
      }
      SepCut cut;
      cut.family = CutFamily::UFL_ALPHA;
      cut.opt_g = opt_g;
      cut.lambda = lambda;
      double grown_sum = 0.0;
      for (int ji = 0; ji < nr; ++ji) {
        cut.balls.push_back({prof.reps[ji], rho[ji]});
        grown_sum += sol.y_at(prof.reps[ji], rho[ji]);
      }
      std::sort(cut.balls.begin(), cut.balls.end());
      if (cut_keys.insert(cut.canonical_key()).second) {
        cuts.push_back(std::move(cut));
        worst_viol = std::max(worst_viol, lambda * grown_sum + cost_sum - opt_g);
      }
      continue;
    }

    double cost = lambda * static_cast<double>(prof.reps.size());
    for (int v = 0; v < n; ++v) {
      double dv = kInf;
      for (int j : prof.reps) dv = std::min(dv, inst.dc(v, j));
      if (dv > 2.0 * prof.r_alpha[v] + 1e-9)
        throw InvariantBreach("connection exceeds 2 r_alpha");
      cost += dv;
    }
    if (lambda * prof.reps.size() >
        lambda * ysum / alpha + 1e-9 * std::max(1.0, lambda * n))
      throw InvariantBreach("facility bound exceeds y mass over alpha");

    if (cost < best_cost) {
      best_cost = cost;
      best.centers = prof.reps;
      best.assignment.resize(n);
      for (int v = 0; v < n; ++v) {
        int c = prof.reps[0];
        for (int j : prof.reps)
          if (inst.dc(v, j) < inst.dc(v, c)) c = j;
        best.assignment[v] = c;
      }
      best.cost = cost;
      double gap_sum = 0.0;
      for (int v = 0; v < n; ++v) {
        double r1 = sol.radii[v].back();
        for (std::size_t t = 0; t < sol.ball[v].size(); ++t)
          if (sol.ball[v][t] >= 1.0 - 1e-12) {
            r1 = sol.radii[v][t];
            break;
          }
        gap_sum += grid.max_gap_below(v, r1);
      }
      best_slack = kFactor * gap_sum + cut_gate * kFactor;
    }
  }

  if (!cuts.empty()) {
    RoundOutcome out = RoundOutcome::make_cut(std::move(cuts.front()),
                                              worst_viol);
    out.extra.assign(cuts.begin() + 1, cuts.end());
    return out;
  }

  if (best_cost > kFactor * opt_g + best_slack + 1e-9)
    throw InvariantBreach("derandomized cost exceeds certified bound");

  best.cert.opt_g_used = opt_g;
  best.cert.factor_bound = kFactor;
  best.cert.slack = best_slack;
  return RoundOutcome::accept(std::move(best));
}

}  // namespace contclust::ufl
