#include "contclust/metric.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace contclust {

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::UFL: return "ufl";
    case ProblemKind::FairKMedian: return "fair_kmedian";
    case ProblemKind::KP: return "kp";
    case ProblemKind::KCWO: return "kcwo";
  }
  return "?";
}

std::vector<std::string> validate_metric(const MetricInstance& inst) {
  std::vector<std::string> out;
  const int np = inst.point_count();
  if (inst.dist.cols() != np) {
    out.push_back("distance matrix is not square");
    return out;
  }
  double diam = 0.0;
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) diam = std::max(diam, inst.dist(i, j));
  const double tau_tri = 1e-9 * diam;

  for (int i = 0; i < np; ++i) {
    if (std::abs(inst.dist(i, i)) > 0.0) {
      std::ostringstream s;
      s << "nonzero self distance at " << i;
      out.push_back(s.str());
    }
    for (int j = i + 1; j < np; ++j) {
      if (inst.dist(i, j) < 0.0) {
        std::ostringstream s;
        s << "negative distance at (" << i << "," << j << ")";
        out.push_back(s.str());
      }
      if (inst.dist(i, j) != inst.dist(j, i)) {
        std::ostringstream s;
        s << "asymmetry at (" << i << "," << j << ")";
        out.push_back(s.str());
      }
    }
  }
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) {
      if (i == j) continue;
      for (int k = 0; k < np; ++k) {
        if (k == i || k == j) continue;
        if (inst.dist(i, k) > inst.dist(i, j) + inst.dist(j, k) + tau_tri) {
          std::ostringstream s;
          s << "triangle violation (" << i << "," << j << "," << k << ")";
          out.push_back(s.str());
        }
      }
    }

  std::set<int> cand(inst.candidate_points.begin(), inst.candidate_points.end());
  if (cand.size() != inst.candidate_points.size())
    out.push_back("duplicate candidate point ids");
  std::set<int> cl;
  for (int c : inst.clients) {
    if (!cl.insert(c).second) {
      std::ostringstream s;
      s << "duplicate client id " << c;
      out.push_back(s.str());
    }
    if (c < 0 || c >= np) {
      std::ostringstream s;
      s << "client id " << c << " out of range";
      out.push_back(s.str());
    } else if (!cand.count(c)) {
      std::ostringstream s;
      s << "client " << c << " not among candidate points";
      out.push_back(s.str());
    }
  }
  for (int c : inst.candidate_points)
    if (c < 0 || c >= np) {
      std::ostringstream s;
      s << "candidate id " << c << " out of range";
      out.push_back(s.str());
    }
  return out;
}

double client_diameter(const MetricInstance& inst) {
  double diam = 0.0;
  const int n = inst.client_count();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) diam = std::max(diam, inst.dc(i, j));
  return diam;
}

RescaleResult rescale(const MetricInstance& inst) {
  RescaleResult res;
  res.instance = inst;
  const int n = inst.client_count();
  double dmin = kInf;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d = inst.dc(i, j);
      if (d > 0.0) dmin = std::min(dmin, d);
    }
  if (n <= 1) {
    res.scale = 1.0;
    res.aspect_ratio = 1.0;
    return res;
  }
  if (!std::isfinite(dmin)) throw AllCoincident();

  res.scale = 1.0 / dmin;
  res.instance.dist = inst.dist * res.scale;
  res.aspect_ratio = client_diameter(res.instance);
  res.aspect_warning =
      res.aspect_ratio > static_cast<double>(n) * n * n;
  return res;
}

}  // namespace contclust
