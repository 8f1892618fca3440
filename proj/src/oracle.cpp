#include "contclust/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace contclust {

double factor_bound(const ProblemSpec& spec) {
  switch (spec.kind) {
    case ProblemKind::UFL: return 2.0 / (1.0 - std::exp(-2.0));
    case ProblemKind::FairKMedian: return 8.0;
    case ProblemKind::KP: return std::pow(2.0, 2 * spec.p + 1);
    case ProblemKind::KCWO: return 2.0;
  }
  return 0.0;
}

double dist_to_set(const MetricInstance& inst, int client_local,
                   const std::vector<int>& center_points) {
  double best = kInf;
  for (int x : center_points)
    best = std::min(best, inst.dist(inst.clients[client_local], x));
  return best;
}

double evaluate_centers(const MetricInstance& inst, const ProblemSpec& spec,
                        const std::vector<int>& center_points) {
  const int n = inst.client_count();
  if (spec.kind == ProblemKind::KCWO) {
    std::vector<double> ds(n);
    for (int v = 0; v < n; ++v) ds[v] = dist_to_set(inst, v, center_points);
    std::sort(ds.begin(), ds.end());
    return ds[spec.m - 1];
  }
  const int p = spec.power();
  double total = 0.0;
  for (int v = 0; v < n; ++v)
    total += std::pow(dist_to_set(inst, v, center_points), p);
  if (spec.kind == ProblemKind::UFL)
    total += spec.lambda * static_cast<double>(center_points.size());
  return total;
}

bool fair_feasible(const MetricInstance& inst, const ProblemSpec& spec,
                   const std::vector<int>& center_points) {
  for (int v = 0; v < inst.client_count(); ++v)
    if (dist_to_set(inst, v, center_points) > spec.radii[v]) return false;
  return true;
}

namespace {

// Number of s-subsets, saturating at limit+1.
long long choose_capped(int nn, int s, long long limit) {
  long long r = 1;
  for (int i = 1; i <= s; ++i) {
    r = r * (nn - s + i) / i;
    if (r > limit) return limit + 1;
  }
  return r;
}

template <typename Eval>
void for_each_combination(int nn, int s, Eval&& eval) {
  std::vector<int> idx(s);
  for (int i = 0; i < s; ++i) idx[i] = i;
  while (true) {
    eval(idx);
    int i = s - 1;
    while (i >= 0 && idx[i] == nn - s + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

ExactResult exact_solve(const MetricInstance& inst, const ProblemSpec& spec,
                        long long budget) {
  ExactResult res;
  const int nx = static_cast<int>(inst.candidate_points.size());
  std::vector<int> sizes;
  if (spec.kind == ProblemKind::UFL) {
    // Opening more than n centers never helps: each center must serve
    // at least one client to pay for itself.
    int smax = std::min(nx, inst.client_count());
    long long total = 0;
    for (int s = 1; s <= smax; ++s) {
      total += choose_capped(nx, s, budget);
      if (total > budget) {
        res.status = ExactResult::Status::TooLarge;
        return res;
      }
      sizes.push_back(s);
    }
  } else {
    int s = std::min(spec.k, nx);
    if (choose_capped(nx, s, budget) > budget) {
      res.status = ExactResult::Status::TooLarge;
      return res;
    }
    sizes.push_back(s);
  }

  bool found = false;
  std::vector<int> pts;
  for (int s : sizes) {
    for_each_combination(nx, s, [&](const std::vector<int>& idx) {
      ++res.enumerated;
      pts.clear();
      for (int i : idx) pts.push_back(inst.candidate_points[i]);
      if (spec.kind == ProblemKind::FairKMedian &&
          !fair_feasible(inst, spec, pts))
        return;
      double val = evaluate_centers(inst, spec, pts);
      if (!found || val < res.value) {
        found = true;
        res.value = val;
        res.centers = pts;
      }
    });
  }
  res.status = found ? ExactResult::Status::Solved
                     : ExactResult::Status::Infeasible;
  return res;
}

std::vector<std::string> certify(const MetricInstance& inst,
                                 const ProblemSpec& spec,
                                 const Solution& solution, double opt_g,
                                 double slack) {
  std::vector<std::string> report;
  auto fail = [&](const std::string& msg) { report.push_back(msg); };
  const int n = inst.client_count();

  std::vector<int> pts;
  for (int c : solution.centers) {
    if (c < 0 || c >= n) {
      fail("center index out of client range");
      return report;
    }
    pts.push_back(inst.clients[c]);
  }
  if (pts.empty()) {
    fail("no centers opened");
    return report;
  }

  if (spec.kind != ProblemKind::UFL &&
      static_cast<int>(pts.size()) > spec.k) {
    std::ostringstream os;
    os << "opened " << pts.size() << " centers, budget k=" << spec.k;
    fail(os.str());
  }

  const double factor = factor_bound(spec);
  const double tol = 1e-9 * std::max(1.0, opt_g);

  if (spec.kind == ProblemKind::KCWO) {
    if (static_cast<int>(solution.served.size()) < spec.m) {
      std::ostringstream os;
      os << "served " << solution.served.size() << " < m=" << spec.m;
      fail(os.str());
    }
    double radius = 0.0;
    for (int v : solution.served)
      radius = std::max(radius, dist_to_set(inst, v, pts));
    if (radius > solution.radius + tol) {
      std::ostringstream os;
      os << "recomputed radius " << radius << " exceeds reported "
         << solution.radius;
      fail(os.str());
    }
    if (radius > factor * opt_g + tol) {
      std::ostringstream os;
      os << "radius " << radius << " exceeds 2*opt_g=" << 2 * opt_g
         << " (slack " << radius - factor * opt_g << ")";
      fail(os.str());
    }
    return report;
  }

  double cost = evaluate_centers(inst, spec, pts);
  if (cost > solution.cost + tol + slack) {
    std::ostringstream os;
    os << "recomputed cost " << cost << " exceeds reported " << solution.cost;
    fail(os.str());
  }
  if (cost > factor * opt_g + slack + tol) {
    std::ostringstream os;
    os << "cost " << cost << " exceeds " << factor << "*opt_g="
       << factor * opt_g << " (slack " << cost - factor * opt_g << ")";
    fail(os.str());
  }
  if (spec.kind == ProblemKind::FairKMedian) {
    for (int v = 0; v < n; ++v) {
      double dv = dist_to_set(inst, v, pts);
      if (dv > 8.0 * spec.radii[v] + slack + tol) {
        std::ostringstream os;
        os << "client " << v << " at distance " << dv << " > 8*r(v)="
           << 8.0 * spec.radii[v];
        fail(os.str());
      }
    }
  }
  return report;
}

}  // namespace contclust
