#include "contclust/solver_fair.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace contclust::fair {

FairProfile filter_with_radii(const MetricInstance& inst,
                              const RadiusGrid& grid,
                              const std::vector<double>& R) {
  const int n = inst.client_count();
  FairProfile prof;
  prof.R = R;
  prof.rep_of.assign(n, -1);

  std::vector<char> uncovered(n, 1);
  int left = n;
  while (left > 0) {
    int j = -1;
    for (int v = 0; v < n; ++v)
      if (uncovered[v] && (j < 0 || R[v] < R[j])) j = v;
    std::vector<int> kids;
    for (int v = 0; v < n; ++v)
      if (uncovered[v] && inst.dc(v, j) <= 2.0 * R[v]) {
        kids.push_back(v);
        uncovered[v] = 0;
        prof.rep_of[v] = static_cast<int>(prof.reps.size());
        --left;
      }
    prof.reps.push_back(j);
    prof.child.push_back(std::move(kids));
  }

  const int nr = static_cast<int>(prof.reps.size());
  prof.s.assign(nr, -1);
  prof.a.assign(nr, 0.0);
  prof.a_read.assign(nr, 0.0);
  for (int ji = 0; ji < nr; ++ji) {
    int j = prof.reps[ji];
    if (nr == 1) {
      prof.a[ji] = grid.r_max[j];
      prof.a_read[ji] = grid.r_max[j];
      continue;
    }
    int best = -1;
    for (int ki = 0; ki < nr; ++ki) {
      if (ki == ji) continue;
      if (best < 0 || inst.dc(j, prof.reps[ki]) < inst.dc(j, prof.reps[best]) ||
          (inst.dc(j, prof.reps[ki]) == inst.dc(j, prof.reps[best]) &&
           prof.reps[ki] < prof.reps[best]))
        best = ki;
    }
    prof.s[ji] = best;
    prof.a[ji] = inst.dc(j, prof.reps[best]) / 2.0;
    prof.a_read[ji] = grid.pred_strict(j, prof.a[ji]);
    if (prof.a[ji] < prof.R[j] - 1e-9)
      throw InvariantBreach("rep half distance below its filtering radius");
  }
  return prof;
}

FairProfile filter(const FractionalSolution& sol, const MetricInstance& inst,
                   const ProblemSpec& spec, const RadiusGrid& grid) {
  const int n = inst.client_count();
  std::vector<double> R(n);
  for (int v = 0; v < n; ++v)
    R[v] = std::min(spec.radii[v], 2.0 * sol.cost[v]);
  return filter_with_radii(inst, grid, R);
}

std::optional<RoundOutcome> separate(const FractionalSolution& sol,
                                     const MetricInstance& inst,
                                     const FairProfile& prof, int k) {
  const int nr = static_cast<int>(prof.reps.size());
  if (nr < 2) return std::nullopt;

  double ysum = 0.0;
  for (int ji = 0; ji < nr; ++ji)
    ysum += sol.y_at(prof.reps[ji], prof.a_read[ji]);
  const double gate = std::max(kTauCut, 10.0 * kTauLp * std::max(1, k));
  if (ysum <= k + gate && nr <= 2 * k) return std::nullopt;

  SepCut cut;
  cut.family = CutFamily::FAIR;
  cut.k = k;
  for (int ji = 0; ji < nr; ++ji)
    cut.balls.push_back({prof.reps[ji], prof.a_read[ji]});
  std::sort(cut.balls.begin(), cut.balls.end());
  double viol = ysum - k;
  if (viol <= gate) {
    std::ostringstream os;
    os << "|Reps|=" << nr << " > 2k=" << 2 * k
       << " but Sep violation is only " << viol;
    throw InvariantBreach(os.str());
  }
  return RoundOutcome::make_cut(cut, viol);
}

DlpInput consolidate(const FractionalSolution& sol, const MetricInstance& inst,
                     const FairProfile& prof, int k, int p) {
  const int nr = static_cast<int>(prof.reps.size());
  DlpInput in;
  in.k = k;
  in.p = p;
  in.reps = prof.reps;
  in.weight.resize(nr);
  in.neighbor.resize(nr);
  in.ndist.resize(nr);
  in.mass.resize(nr);
  for (int ji = 0; ji < nr; ++ji) {
    in.weight[ji] = static_cast<double>(prof.child[ji].size());
    in.neighbor[ji] = prof.s[ji] >= 0 ? prof.s[ji] : ji;
    in.ndist[ji] =
        prof.s[ji] >= 0 ? inst.dc(prof.reps[ji], prof.reps[prof.s[ji]]) : 0.0;
    double z = std::min(sol.y_at(prof.reps[ji], prof.a_read[ji]), 1.0);
    if (z < 0.5 - 1e-6)
      throw InvariantBreach("consolidated mass below one half");
    in.mass[ji] = z;
  }
  return in;
}

RoundOutcome round_profile(const FractionalSolution& sol,
                           const MetricInstance& inst, const RadiusGrid& grid,
                           const FairProfile& prof, double opt_g, int k, int p,
                           double factor) {
  (void)grid;
  if (auto cut = separate(sol, inst, prof, k)) return *cut;

  DlpInput in = consolidate(sol, inst, prof, k, p);

  // Consolidation cost bound: sum_j w_j (1 - z_j) c_j^p <= 2^p sum_v U_v.
  double usum = 0.0;
  for (double c : sol.cost) usum += c;
  if (in.assign_cost() >
      std::pow(2.0, p) * usum * (1.0 + 1e-6) + 1e-7 * std::max(1.0, opt_g))
    throw InvariantBreach("consolidation cost bound breached");

  DlpInput padded = pad(in);
  std::vector<double> half = round_half(padded);
  DlpSolution dlp = round_forest(padded, half);

  const int n = inst.client_count();
  Solution out;
  for (std::size_t ji = 0; ji < prof.reps.size(); ++ji)
    if (dlp.open[ji]) out.centers.push_back(prof.reps[ji]);
  out.assignment.resize(n);
  out.cost = 0.0;
  for (int v = 0; v < n; ++v) {
    int c = out.centers[0];
    for (int j : out.centers)
      if (inst.dc(v, j) < inst.dc(v, c)) c = j;
    out.assignment[v] = c;
    out.cost += std::pow(inst.dc(v, c), p);
  }
  out.cert.opt_g_used = opt_g;
  out.cert.factor_bound = factor;
  out.cert.slack = 1e-6 * std::max(1.0, factor * opt_g);
  if (out.cost > factor * opt_g + out.cert.slack) {
    std::ostringstream os;
    os << "rounded cost " << out.cost << " exceeds " << factor
       << " * opt_g = " << factor * opt_g;
    throw CertificateFailure(os.str());
  }
  return RoundOutcome::accept(std::move(out));
}

RoundOutcome attempt_round(const FractionalSolution& sol,
                           const MetricInstance& inst, const ProblemSpec& spec,
                           const RadiusGrid& grid, double opt_g) {
  FairProfile prof = filter(sol, inst, spec, grid);
  RoundOutcome out =
      round_profile(sol, inst, grid, prof, opt_g, spec.k, 1, 8.0);
  if (out.kind != RoundOutcome::Kind::Accept) return out;

  // Fairness certificate: every client within 8 r(v) of the opened set,
  // up to one grid shadow step.
  for (int v = 0; v < inst.client_count(); ++v) {
    double dv = kInf;
    for (int j : out.solution.centers) dv = std::min(dv, inst.dc(v, j));
    double allow = 8.0 * spec.radii[v] +
                   2.0 * grid.max_gap_below(v, spec.radii[v]) +
                   1e-6 * std::max(1.0, spec.radii[v]);
    if (std::isfinite(spec.radii[v]) && dv > allow) {
      std::ostringstream os;
      os << "client " << v << " at distance " << dv << " > 8 r(v) = "
         << 8.0 * spec.radii[v];
      throw CertificateFailure(os.str());
    }
  }
  out.solution.cert.fairness_ok = true;
  return out;
}

}  // namespace contclust::fair
