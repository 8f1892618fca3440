#include "contclust/round_or_cut.hpp"

#include "contclust/oracle.hpp"
#include "contclust/solver_fair.hpp"
#include "contclust/solver_kcwo.hpp"
#include "contclust/solver_kp.hpp"
#include "contclust/solver_ufl.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

namespace contclust {

void SearchTrace::write_csv(std::ostream& os) const {
  os << "opt_g,iterations,cuts,status,cost\n";
  for (const auto& r : rows) {
    os << r.opt_g << "," << r.iterations << "," << r.cuts_added << ","
       << r.status << ",";
    if (std::isnan(r.cost)) os << "NA";
    else os << r.cost;
    os << "\n";
  }
}

IterateResult iterate(const MetricInstance& inst, const ProblemSpec& spec,
                      const RadiusGrid& grid, double opt_g,
                      const RoundOracle& oracle, const SolveConfig& cfg,
                      std::vector<SepCut>* seed_cuts) {
  IterateResult res;
  ConstraintPool pool = build_base(inst, spec, grid, opt_g);
  if (seed_cuts)
    for (SepCut c : *seed_cuts) {
      // UFL ball families stay valid at any guess once the right-hand side
      // is rewritten; FAIR/KCWO cuts are guess-independent as stored.
      if (c.family == CutFamily::UFL_ALPHA) c.opt_g = opt_g;
      pool.add_cut(c);
    }

  long long cap = cfg.cut_cap_mult;
  std::size_t max_pts = 1;
  for (int v = 0; v < inst.client_count(); ++v)
    max_pts = std::max(max_pts, grid.size(v));
  cap *= static_cast<long long>(inst.client_count()) * max_pts;

  const LpObjective obj = spec.kind == ProblemKind::KCWO
                              ? LpObjective::Feasibility
                              : LpObjective::MinimizeCost;

  while (true) {
    ++res.iterations;
    if (res.iterations > cap) {
      res.status = IterateResult::Status::CutLimitExceeded;
      return res;
    }
    LpSolveResult lp = solve_lp(pool, obj);
    if (lp.status == LpSolveResult::Status::Infeasible) {
      res.status = IterateResult::Status::Infeasible;
      return res;
    }
    if (cfg.observer) cfg.observer(pool, lp.sol);

    RoundOutcome out = oracle(lp.sol, opt_g);
    if (out.kind == RoundOutcome::Kind::Accept) {
      res.status = IterateResult::Status::Accepted;
      res.solution = std::move(out.solution);
      res.solution.cert.cuts_added = res.cuts_added;
      res.solution.cert.iterations = res.iterations;
      return res;
    }
    int added = pool.add_cut(out.cut) ? 1 : 0;
    if (added && seed_cuts) seed_cuts->push_back(out.cut);
    for (const auto& c : out.extra)
      if (pool.add_cut(c)) {
        ++added;
        if (seed_cuts) seed_cuts->push_back(c);
      }
    if (added == 0)
      throw InvariantBreach("rounding regenerated only pooled cuts");
    res.cuts_added += added;
  }
}

namespace {

struct ScaledProblem {
  MetricInstance inst;
  ProblemSpec spec;
  double scale = 1.0;  // d' = scale * d
};

ScaledProblem rescale_problem(const MetricInstance& inst,
                              const ProblemSpec& spec) {
  ScaledProblem sp;
  sp.spec = spec;
  if (inst.client_count() <= 1 || client_diameter(inst) == 0.0) {
    sp.inst = inst;
    return sp;
  }
  RescaleResult rs = rescale(inst);
  sp.inst = std::move(rs.instance);
  sp.scale = rs.scale;
  sp.spec.lambda = spec.lambda * rs.scale;
  for (double& r : sp.spec.radii)
    if (std::isfinite(r)) r *= rs.scale;
  return sp;
}

RoundOracle make_oracle(const MetricInstance& inst, const ProblemSpec& spec,
                        const RadiusGrid& grid) {
  switch (spec.kind) {
    case ProblemKind::UFL:
      return [&](const FractionalSolution& sol, double g) {
        return ufl::attempt_round(sol, inst, grid, g, spec.lambda);
      };
    case ProblemKind::FairKMedian:
      return [&](const FractionalSolution& sol, double g) {
        return fair::attempt_round(sol, inst, spec, grid, g);
      };
    case ProblemKind::KP:
      return [&](const FractionalSolution& sol, double g) {
        return kp::attempt_round(sol, inst, spec, grid, g);
      };
    case ProblemKind::KCWO:
      return [&](const FractionalSolution& sol, double g) {
        return kcwo::attempt_round(sol, inst, spec, grid, g);
      };
  }
  return {};
}

// Largest family of pairwise disjoint fairness balls B(v, r(v)); exact for
// up to 16 finite radii, greedy beyond. A family larger than k yields an
// immediately infeasible (and always valid) packing cut.
std::vector<int> max_disjoint_fairness_balls(const MetricInstance& inst,
                                             const ProblemSpec& spec) {
  std::vector<int> cand;
  for (int v = 0; v < inst.client_count(); ++v)
    if (std::isfinite(spec.radii[v])) cand.push_back(v);
  const int nc = static_cast<int>(cand.size());
  auto disjoint = [&](int a, int b) {
    return inst.dc(cand[a], cand[b]) > spec.radii[cand[a]] + spec.radii[cand[b]];
  };
  if (nc <= 16) {
    std::vector<int> best;
    for (unsigned mask = 0; mask < (1u << nc); ++mask) {
      std::vector<int> fam;
      for (int i = 0; i < nc; ++i)
        if (mask & (1u << i)) fam.push_back(i);
      if (fam.size() <= best.size()) continue;
      bool ok = true;
      for (std::size_t a = 0; a < fam.size() && ok; ++a)
        for (std::size_t b = a + 1; b < fam.size() && ok; ++b)
          ok = disjoint(fam[a], fam[b]);
      if (ok) best = fam;
    }
    std::vector<int> out;
    for (int i : best) out.push_back(cand[i]);
    return out;
  }
  std::vector<int> order(nc);
  for (int i = 0; i < nc; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return spec.radii[cand[a]] < spec.radii[cand[b]] ||
           (spec.radii[cand[a]] == spec.radii[cand[b]] && cand[a] < cand[b]);
  });
  std::vector<int> picked;
  for (int i : order) {
    bool ok = true;
    for (int j : picked) ok = ok && disjoint(i, j);
    if (ok) picked.push_back(i);
  }
  std::vector<int> out;
  for (int i : picked) out.push_back(cand[i]);
  return out;
}

double unscale_cost(double value, const ProblemSpec& spec, double scale) {
  if (spec.kind == ProblemKind::KCWO) return value / scale;
  return value / std::pow(scale, spec.power());
}

}  // namespace

SearchResult search(const MetricInstance& raw_inst, const ProblemSpec& raw_spec,
                    const SolveConfig& cfg) {
  SearchResult result;
  ScaledProblem sp = rescale_problem(raw_inst, raw_spec);
  const MetricInstance& inst = sp.inst;
  const ProblemSpec& spec = sp.spec;
  const int n = inst.client_count();
  const double diam = client_diameter(inst);
  const int p = spec.power();

  auto finish_accept = [&](Solution sol, double opt_g_scaled) {
    // Report in original units: recompute from the raw distances.
    std::vector<int> pts;
    for (int c : sol.centers) pts.push_back(raw_inst.clients[c]);
    if (raw_spec.kind == ProblemKind::KCWO) {
      double radius = 0.0;
      for (int v : sol.served)
        radius = std::max(radius, dist_to_set(raw_inst, v, pts));
      sol.radius = radius;
      sol.cost = radius;
    } else {
      sol.cost = evaluate_centers(raw_inst, raw_spec, pts);
    }
    sol.cert.opt_g_used = unscale_cost(opt_g_scaled, raw_spec, sp.scale);
    sol.cert.slack = unscale_cost(sol.cert.slack, raw_spec, sp.scale);
    result.solution = std::move(sol);
    result.trace.chosen_opt_g = result.solution.cert.opt_g_used;
  };

  if (spec.kind == ProblemKind::KCWO) {
    std::set<double> guess_set;
    for (int v = 0; v < n; ++v)
      for (int x : inst.candidate_points) {
        double d = inst.dist(inst.clients[v], x);
        guess_set.insert(d);
        guess_set.insert(d / 2.0);
      }
    std::vector<double> guesses(guess_set.begin(), guess_set.end());
    RadiusGrid grid = build_grid(inst, spec, cfg.grid, guesses);
    RoundOracle oracle = make_oracle(inst, spec, grid);
    std::vector<SepCut> retained;

    for (double g : guesses) {
      IterateResult it = iterate(inst, spec, grid, g, oracle, cfg, &retained);
      TraceRow row{unscale_cost(g, raw_spec, sp.scale), it.iterations,
                   it.cuts_added, "", std::nan("")};
      result.trace.total_cuts += it.cuts_added;
      if (it.status == IterateResult::Status::Accepted) {
        row.status = "accept";
        row.cost = unscale_cost(it.solution.cost, raw_spec, sp.scale);
        result.trace.rows.push_back(row);
        result.status = SearchResult::Status::Solved;
        finish_accept(std::move(it.solution), g);
        return result;
      }
      row.status = it.status == IterateResult::Status::Infeasible
                       ? "infeasible"
                       : "cut_limit";
      result.trace.rows.push_back(row);
      if (it.status == IterateResult::Status::CutLimitExceeded) {
        result.status = SearchResult::Status::LimitExceeded;
        return result;
      }
    }
    // The largest guess always serves every client within 2 opt_g.
    throw InvariantBreach("no KCWO guess accepted");
  }

  RadiusGrid grid = build_grid(inst, spec, cfg.grid);
  RoundOracle oracle = make_oracle(inst, spec, grid);
  std::vector<SepCut> retained;

  double hi = 0.0;
  switch (spec.kind) {
    case ProblemKind::UFL:
      hi = spec.lambda * n + 2.0 * n * diam;
      if (n >= 2) {
        // Private balls below half the nearest-client distance are pairwise
        // disjoint for free; one eager family prices all bottom mass.
        SepCut priv;
        priv.family = CutFamily::UFL_ALPHA;
        priv.lambda = spec.lambda;
        for (int v = 0; v < n; ++v) {
          bool dup = false;
          for (int u = 0; u < v; ++u) dup = dup || inst.dc(v, u) == 0.0;
          if (dup) continue;  // one ball per location
          double dmin = kInf;
          for (int u = 0; u < n; ++u)
            if (u != v && inst.dc(v, u) > 0.0)
              dmin = std::min(dmin, inst.dc(v, u));
          if (!std::isfinite(dmin)) continue;
          double rho = grid.pred_strict(v, dmin / 2.0);
          priv.balls.push_back({v, rho});
        }
        if (priv.balls.size() >= 2) retained.push_back(priv);
      }
      break;
    case ProblemKind::KP:
      hi = n * std::pow(2.0 * diam, p);
      break;
    case ProblemKind::FairKMedian: {
      double r_min = kInf;
      for (double r : spec.radii)
        if (std::isfinite(r)) r_min = std::min(r_min, r);
      double reach = std::isfinite(r_min) ? diam + r_min : 2.0 * diam;
      hi = n * std::max(2.0 * diam, reach);
      auto fam = max_disjoint_fairness_balls(inst, spec);
      if (static_cast<int>(fam.size()) > spec.k) {
        SepCut cut;
        cut.family = CutFamily::FAIR;
        cut.k = spec.k;
        for (int v : fam) cut.balls.push_back({v, spec.radii[v]});
        std::sort(cut.balls.begin(), cut.balls.end());
        retained.push_back(cut);
      }
      break;
    }
    default: break;
  }
  const double abs_tol = cfg.bisect_abs > 0.0 ? cfg.bisect_abs
                                              : 1e-12 * (1.0 + hi);

  auto probe = [&](double g) {
    IterateResult it = iterate(inst, spec, grid, g, oracle, cfg, &retained);
    TraceRow row{unscale_cost(g, raw_spec, sp.scale), it.iterations,
                 it.cuts_added, "", std::nan("")};
    result.trace.total_cuts += it.cuts_added;
    if (it.status == IterateResult::Status::Accepted) {
      row.status = "accept";
      row.cost = unscale_cost(it.solution.cost, raw_spec, sp.scale);
    } else {
      row.status = it.status == IterateResult::Status::Infeasible
                       ? "infeasible"
                       : "cut_limit";
    }
    result.trace.rows.push_back(row);
    return it;
  };

  IterateResult top = probe(hi);
  if (top.status == IterateResult::Status::CutLimitExceeded) {
    result.status = SearchResult::Status::LimitExceeded;
    return result;
  }
  if (top.status == IterateResult::Status::Infeasible) {
    // hi bounds the optimum of every solvable instance of this kind, so an
    // infeasible pool certifies the instance itself is infeasible.
    result.status = SearchResult::Status::Infeasible;
    return result;
  }

  Solution best = std::move(top.solution);
  double best_g = hi;
  double lo = 0.0;
  while (hi > lo * (1.0 + cfg.bisect_rel) + abs_tol) {
    double mid = 0.5 * (lo + hi);
    IterateResult it = probe(mid);
    if (it.status == IterateResult::Status::CutLimitExceeded) {
      result.status = SearchResult::Status::LimitExceeded;
      return result;
    }
    if (it.status == IterateResult::Status::Accepted) {
      hi = mid;
      if (it.solution.cost <= best.cost) {
        best = std::move(it.solution);
        best_g = mid;
      }
    } else {
      lo = mid;
    }
  }

  result.status = SearchResult::Status::Solved;
  finish_accept(std::move(best), best_g);
  return result;
}

}  // namespace contclust
