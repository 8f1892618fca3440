#include "contclust/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace contclust {

namespace {

constexpr std::size_t kMaxGridPoints = 400000;

// Matching tolerance for grid lookups; must stay well below the 1e-9
// relative offset of the shadow points.
double lookup_tol(double x) { return 1e-13 * std::max(1.0, x); }

std::vector<double> dedup_sorted(std::vector<double> pts) {
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double x : pts) {
    if (out.empty() || x - out.back() > lookup_tol(x)) out.push_back(x);
  }
  return out;
}

}  // namespace

std::vector<double> grid_r_max(const MetricInstance& inst,
                               const ProblemSpec& spec) {
  const int n = inst.client_count();
  const double diam = client_diameter(inst);
  std::vector<double> rmax(n, 0.0);

  switch (spec.kind) {
    case ProblemKind::UFL:
      for (int v = 0; v < n; ++v) rmax[v] = spec.lambda + n * diam;
      break;
    case ProblemKind::KP:
      for (int v = 0; v < n; ++v) rmax[v] = 2.0 * diam;
      break;
    case ProblemKind::FairKMedian: {
      double r_min_finite = kInf;
      for (double r : spec.radii)
        if (std::isfinite(r)) r_min_finite = std::min(r_min_finite, r);
      for (int v = 0; v < n; ++v) {
        double r = spec.radii[v];
        if (std::isfinite(r)) {
          rmax[v] = std::max(2.0 * diam, r);
        } else if (std::isfinite(r_min_finite)) {
          // A center serving the smallest-radius client is within
          // diam + r_min of every client, so the optimum never connects
          // an unconstrained client farther than that.
          rmax[v] = std::max(2.0 * diam, diam + r_min_finite);
        } else {
          rmax[v] = 2.0 * diam;
        }
      }
      break;
    }
    case ProblemKind::KCWO: {
      double far = 0.0;
      for (int v = 0; v < n; ++v)
        for (int x : inst.candidate_points)
          far = std::max(far, inst.dist(inst.clients[v], x));
      for (int v = 0; v < n; ++v) rmax[v] = 2.0 * far;
      break;
    }
  }
  return rmax;
}

RadiusGrid build_grid(const MetricInstance& inst, const ProblemSpec& spec,
                      const GridConfig& cfg, const std::vector<double>& extra) {
  const int n = inst.client_count();
  RadiusGrid grid;
  grid.eps_grid = cfg.effective_eps_grid(n);
  grid.eps_abs = cfg.effective_eps_abs(n);
  grid.r_max = grid_r_max(inst, spec);
  grid.radii.resize(n);

  std::vector<double> halves;
  halves.reserve(static_cast<std::size_t>(n) * (n + 1) / 2 + n * n);
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w) {
      halves.push_back(inst.dc(u, w) / 2.0);
      halves.push_back(inst.dc(u, w));
    }

  for (int v = 0; v < n; ++v) {
    const double rmax = grid.r_max[v];
    const double tol = lookup_tol(rmax);
    std::vector<double> pts;
    pts.push_back(0.0);
    pts.push_back(rmax);
    for (int u = 0; u < n; ++u) pts.push_back(inst.dc(v, u));
    for (double h : halves) pts.push_back(h);
    if (spec.kind == ProblemKind::FairKMedian && std::isfinite(spec.radii[v]))
      pts.push_back(spec.radii[v]);
    for (double e : extra) pts.push_back(e);

    pts.erase(std::remove_if(pts.begin(), pts.end(),
                             [&](double x) { return x < 0.0 || x > rmax + tol; }),
              pts.end());
    // Shadow points just below each structural radius: separating cuts use
    // them as strictly smaller ball radii when half-distance balls touch.
    const std::size_t nstruct = pts.size();
    for (std::size_t i = 0; i < nstruct; ++i) {
      double s = pts[i] * (1.0 - 1e-9);
      if (pts[i] > 0.0 && s > 0.0) pts.push_back(s);
    }
    pts = dedup_sorted(std::move(pts));
    if (pts.back() < rmax - tol) pts.push_back(rmax);
    else pts.back() = rmax;

    // Mesh refinement: enforce rho_{t+1} <= (1+eps_grid) rho_t + eps_abs.
    std::vector<double> meshed;
    meshed.reserve(pts.size() * 4);
    meshed.push_back(pts.front());
    for (std::size_t i = 1; i < pts.size(); ++i) {
      double target = pts[i];
      while (true) {
        double next = (1.0 + grid.eps_grid) * meshed.back() + grid.eps_abs;
        if (next >= target - tol) break;
        meshed.push_back(next);
        if (meshed.size() > kMaxGridPoints)
          throw std::runtime_error("radius grid exceeds point budget");
      }
      meshed.push_back(target);
    }
    grid.radii[v] = std::move(meshed);
  }
  return grid;
}

std::optional<double> RadiusGrid::succ(int v, double x) const {
  const auto& r = radii[v];
  auto it = std::lower_bound(r.begin(), r.end(), x);
  if (it == r.end()) return std::nullopt;
  return *it;
}

std::optional<double> RadiusGrid::succ_strict(int v, double x) const {
  const auto& r = radii[v];
  auto it = std::upper_bound(r.begin(), r.end(), x);
  if (it == r.end()) return std::nullopt;
  return *it;
}

double RadiusGrid::max_gap_below(int v, double hi) const {
  const auto& r = radii[v];
  double g = 0.0;
  for (std::size_t t = 0; t + 1 < r.size(); ++t) {
    if (r[t] >= hi) break;
    g = std::max(g, r[t + 1] - r[t]);
  }
  return g;
}

double RadiusGrid::pred_strict(int v, double x) const {
  const auto& r = radii[v];
  auto it = std::lower_bound(r.begin(), r.end(), x);
  if (it == r.begin()) return 0.0;
  return *(it - 1);
}

bool RadiusGrid::contains(int v, double rho) const {
  const auto& r = radii[v];
  const double tol = lookup_tol(rho);
  auto it = std::lower_bound(r.begin(), r.end(), rho - tol);
  return it != r.end() && std::abs(*it - rho) <= tol;
}

}  // namespace contclust
