#include "contclust/lp_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace contclust {

namespace {

double lookup_tol(double x) { return 1e-13 * std::max(1.0, x); }

// Exact-ish lookup of rho in a sorted radius list.
int radius_index(const std::vector<double>& radii, double rho) {
  const double tol = lookup_tol(rho);
  auto it = std::lower_bound(radii.begin(), radii.end(), rho - tol);
  if (it == radii.end() || std::abs(*it - rho) > tol) return -1;
  return static_cast<int>(it - radii.begin());
}

std::string var_name(const VarIndex& v) {
  char buf[64];
  switch (v.kind) {
    case VarKind::Cost: std::snprintf(buf, sizeof buf, "C(%d)", v.client); break;
    case VarKind::Cov: std::snprintf(buf, sizeof buf, "cov(%d)", v.client); break;
    case VarKind::Ball:
      std::snprintf(buf, sizeof buf, "y(%d,%.12g)", v.client, v.radius);
      break;
  }
  return buf;
}

double row_magnitude(const LinearConstraint& row) {
  double mag = std::abs(row.rhs);
  for (const auto& [var, c] : row.terms) mag = std::max(mag, std::abs(c));
  return std::max(mag, 1.0);
}

}  // namespace

std::string SepCut::canonical_key() const {
  std::ostringstream os;
  switch (family) {
    case CutFamily::UFL_ALPHA: os << "U"; break;
    case CutFamily::FAIR: os << "F"; break;
    case CutFamily::KCWO: os << "K"; break;
  }
  auto sorted = balls;
  std::sort(sorted.begin(), sorted.end());
  os.precision(17);
  for (const auto& [j, rho] : sorted) os << "|" << j << ":" << rho;
  if (family == CutFamily::UFL_ALPHA) os << "|g:" << opt_g;
  return os.str();
}

double FractionalSolution::y_at(int v, double rho) const {
  const auto& r = radii[v];
  auto it = std::lower_bound(r.begin(), r.end(), rho);
  if (it == r.end()) return ball[v].back();
  return ball[v][it - r.begin()];
}

double FractionalSolution::value(const VarIndex& var) const {
  switch (var.kind) {
    case VarKind::Cost: return cost[var.client];
    case VarKind::Cov: return cov[var.client];
    case VarKind::Ball: return y_at(var.client, var.radius);
  }
  return 0.0;
}

ConstraintPool::ConstraintPool(const MetricInstance& inst,
                               const ProblemSpec& spec, const RadiusGrid& grid,
                               double opt_g)
    : inst_(&inst), spec_(&spec), grid_(&grid), opt_g_(opt_g) {
  const int n = inst.client_count();
  radii_.resize(n);

  auto snap = [&](int v, double x) {
    const double tol = lookup_tol(x);
    auto s = grid.succ(v, x - tol);
    if (!s || std::abs(*s - x) > tol) {
      std::ostringstream os;
      os << "radius " << x << " missing from grid of client " << v;
      throw GridMissingRadius(os.str());
    }
    return *s;
  };

  for (int v = 0; v < n; ++v) {
    std::vector<double> vals = {0.0, grid.r_max[v]};
    if (spec.kind == ProblemKind::KCWO) {
      vals.push_back(snap(v, opt_g));
    } else {
      for (int u = 0; u < n; ++u) vals.push_back(snap(v, inst.dc(v, u)));
      for (int u = 0; u < n; ++u)
        for (int w = u + 1; w < n; ++w) {
          double h = inst.dc(u, w) / 2.0;
          if (h <= grid.r_max[v]) vals.push_back(snap(v, h));
        }
      if (spec.kind == ProblemKind::FairKMedian &&
          std::isfinite(spec.radii[v]))
        vals.push_back(snap(v, spec.radii[v]));
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    radii_[v] = std::move(vals);
  }
  rebuild_base();
}

bool ConstraintPool::materialize(int v, double rho) {
  if (!grid_->contains(v, rho)) {
    std::ostringstream os;
    os << "materialize: radius " << rho << " not on grid of client " << v;
    throw GridMissingRadius(os.str());
  }
  auto& r = radii_[v];
  const double tol = lookup_tol(rho);
  auto it = std::lower_bound(r.begin(), r.end(), rho - tol);
  if (it != r.end() && std::abs(*it - rho) <= tol) return false;
  r.insert(it, rho);
  rebuild_base();
  return true;
}

bool ConstraintPool::add_cut(const SepCut& cut) {
  std::string key = cut.canonical_key();
  if (keys_.count(key)) return false;

  for (std::size_t a = 0; a < cut.balls.size(); ++a)
    for (std::size_t b = a + 1; b < cut.balls.size(); ++b) {
      const auto& [j, rj] = cut.balls[a];
      const auto& [j2, rj2] = cut.balls[b];
      if (!(inst_->dc(j, j2) > rj + rj2)) {
        std::ostringstream os;
        os << "cut balls not disjoint: d(" << j << "," << j2
           << ")=" << inst_->dc(j, j2) << " vs " << rj << "+" << rj2;
        throw InvariantBreach(os.str());
      }
    }

  bool changed = false;
  for (const auto& [j, rho] : cut.balls) {
    if (radius_index(radii_[j], rho) < 0) changed = true;
  }
  if (changed) {
    for (const auto& [j, rho] : cut.balls) {
      if (!grid_->contains(j, rho)) {
        std::ostringstream os;
        os << "cut radius " << rho << " off grid for client " << j;
        throw GridMissingRadius(os.str());
      }
      auto& r = radii_[j];
      if (radius_index(r, rho) < 0)
        r.insert(std::lower_bound(r.begin(), r.end(), rho), rho);
    }
    rebuild_base();
  }
  cuts_.push_back(cut);
  keys_.insert(key);
  return true;
}

void ConstraintPool::rebuild_base() {
  base_.clear();
  const int n = inst_->client_count();
  const int p = spec_->power();
  const bool has_cost = spec_->kind != ProblemKind::KCWO;
  char tag[64];

  for (int v = 0; v < n; ++v) {
    const auto& r = radii_[v];
    const int top = static_cast<int>(r.size()) - 1;

    for (int t = 0; t + 1 <= top; ++t) {
      LinearConstraint row;
      row.terms = {{VarIndex::ball(v, r[t]), 1.0},
                   {VarIndex::ball(v, r[t + 1]), -1.0}};
      row.sense = RowSense::LE;
      row.rhs = 0.0;
      std::snprintf(tag, sizeof tag, "mono(%d,%d)", v, t);
      row.tag = tag;
      base_.push_back(std::move(row));
    }

    if (has_cost) {
      // Right-endpoint discretization of p * int (1 - y(v,r)) r^{p-1} dr:
      //   sum_t (r_{t+1}^p - r_t^p) (1 - y(v, r_{t+1})) <= U_v.
      LinearConstraint row;
      double total = 0.0;
      for (int t = 0; t + 1 <= top; ++t) {
        double c = std::pow(r[t + 1], p) - std::pow(r[t], p);
        if (c <= 0.0) continue;
        total += c;
        row.terms.push_back({VarIndex::ball(v, r[t + 1]), c});
      }
      row.terms.push_back({VarIndex::cost(v), 1.0});
      row.sense = RowSense::GE;
      row.rhs = total;
      std::snprintf(tag, sizeof tag, "integral(%d)", v);
      row.tag = tag;
      base_.push_back(std::move(row));
    }
  }

  switch (spec_->kind) {
    case ProblemKind::UFL:
    case ProblemKind::KP:
      for (int v = 0; v < n; ++v) {
        LinearConstraint row;
        row.terms = {{VarIndex::ball(v, radii_[v].back()), 1.0}};
        row.sense = RowSense::GE;
        row.rhs = 1.0;
        std::snprintf(tag, sizeof tag, "anchor(%d)", v);
        row.tag = tag;
        base_.push_back(std::move(row));
      }
      break;
    case ProblemKind::FairKMedian:
      for (int v = 0; v < n; ++v) {
        LinearConstraint row;
        if (std::isfinite(spec_->radii[v])) {
          row.terms = {{VarIndex::ball(v, spec_->radii[v]), 1.0}};
          std::snprintf(tag, sizeof tag, "fair_radius(%d)", v);
        } else {
          row.terms = {{VarIndex::ball(v, radii_[v].back()), 1.0}};
          std::snprintf(tag, sizeof tag, "anchor(%d)", v);
        }
        row.sense = RowSense::GE;
        row.rhs = 1.0;
        row.tag = tag;
        base_.push_back(std::move(row));
      }
      // Non-concentric monotonicity at the tightest materialized radius:
      // d(u,v) + r(v) <= rho'  ==>  B(v, r(v)) subseteq B(u, rho').
      for (int v = 0; v < n; ++v) {
        if (!std::isfinite(spec_->radii[v])) continue;
        for (int u = 0; u < n; ++u) {
          if (u == v) continue;
          double x = inst_->dc(u, v) + spec_->radii[v];
          const auto& ru = radii_[u];
          auto it = std::lower_bound(ru.begin(), ru.end(), x);
          if (it == ru.end()) continue;
          LinearConstraint row;
          row.terms = {{VarIndex::ball(u, *it), 1.0},
                       {VarIndex::ball(v, spec_->radii[v]), -1.0}};
          row.sense = RowSense::GE;
          row.rhs = 0.0;
          std::snprintf(tag, sizeof tag, "pair(%d,%d)", v, u);
          row.tag = tag;
          base_.push_back(std::move(row));
        }
      }
      break;
    case ProblemKind::KCWO: {
      for (int v = 0; v < n; ++v) {
        LinearConstraint row;
        row.terms = {{VarIndex::ball(v, opt_g_), 1.0},
                     {VarIndex::cov(v), -1.0}};
        row.sense = RowSense::GE;
        row.rhs = 0.0;
        std::snprintf(tag, sizeof tag, "cov_link(%d)", v);
        row.tag = tag;
        base_.push_back(std::move(row));

        LinearConstraint cap;
        cap.terms = {{VarIndex::cov(v), 1.0}};
        cap.sense = RowSense::LE;
        cap.rhs = 1.0;
        std::snprintf(tag, sizeof tag, "cov_cap(%d)", v);
        cap.tag = tag;
        base_.push_back(std::move(cap));
      }
      LinearConstraint row;
      for (int v = 0; v < n; ++v) row.terms.push_back({VarIndex::cov(v), 1.0});
      row.sense = RowSense::GE;
      row.rhs = spec_->m;
      row.tag = "serve";
      base_.push_back(std::move(row));
      break;
    }
  }

  if (has_cost) {
    LinearConstraint row;
    for (int v = 0; v < n; ++v) row.terms.push_back({VarIndex::cost(v), 1.0});
    row.sense = RowSense::LE;
    row.rhs = opt_g_;
    row.tag = "cost";
    base_.push_back(std::move(row));
  }
}

LinearConstraint ConstraintPool::cut_row(const SepCut& cut) const {
  LinearConstraint row;
  row.sense = RowSense::LE;
  if (cut.family == CutFamily::UFL_ALPHA) {
    for (const auto& [j, rho] : cut.balls)
      row.terms.push_back({VarIndex::ball(j, rho), cut.lambda});
    for (int v = 0; v < inst_->client_count(); ++v)
      row.terms.push_back({VarIndex::cost(v), 1.0});
    row.rhs = cut.opt_g;
  } else {
    for (const auto& [j, rho] : cut.balls)
      row.terms.push_back({VarIndex::ball(j, rho), 1.0});
    row.rhs = cut.k;
  }
  row.tag = "cut:" + cut.canonical_key();
  return row;
}

std::vector<LinearConstraint> ConstraintPool::all_rows() const {
  std::vector<LinearConstraint> rows = base_;
  for (const auto& cut : cuts_) rows.push_back(cut_row(cut));
  return rows;
}

std::pair<double, std::string> ConstraintPool::max_violation(
    const FractionalSolution& sol) const {
  double worst = 0.0;
  std::string worst_tag;
  for (const auto& row : all_rows()) {
    double lhs = 0.0;
    for (const auto& [var, c] : row.terms) lhs += c * sol.value(var);
    double viol = 0.0;
    switch (row.sense) {
      case RowSense::LE: viol = lhs - row.rhs; break;
      case RowSense::GE: viol = row.rhs - lhs; break;
      case RowSense::EQ: viol = std::abs(lhs - row.rhs); break;
    }
    viol /= row_magnitude(row);
    if (viol > worst) {
      worst = viol;
      worst_tag = row.tag;
    }
  }
  return {worst, worst_tag};
}

void ConstraintPool::dump(std::ostream& os) const {
  for (const auto& row : all_rows()) {
    os << row.tag << ":";
    for (const auto& [var, c] : row.terms)
      os << " " << (c >= 0 ? "+" : "") << c << "*" << var_name(var);
    os << (row.sense == RowSense::LE ? " <= "
                                     : row.sense == RowSense::GE ? " >= " : " == ")
       << row.rhs << "\n";
  }
}

ConstraintPool build_base(const MetricInstance& inst, const ProblemSpec& spec,
                          const RadiusGrid& grid, double opt_g) {
  return ConstraintPool(inst, spec, grid, opt_g);
}

double check_cut_violated(const FractionalSolution& sol, const SepCut& cut) {
  double ysum = 0.0;
  for (const auto& [j, rho] : cut.balls) ysum += sol.y_at(j, rho);
  if (cut.family == CutFamily::UFL_ALPHA) {
    double csum = 0.0;
    for (double c : sol.cost) csum += c;
    return cut.lambda * ysum + csum - cut.opt_g;
  }
  return ysum - cut.k;
}

LpSolveResult solve_lp(const ConstraintPool& pool, LpObjective objective) {
  const MetricInstance& inst = pool.instance();
  const ProblemSpec& spec = pool.spec();
  const int n = inst.client_count();
  const bool has_cost = spec.kind != ProblemKind::KCWO;
  const bool has_cov = spec.kind == ProblemKind::KCWO;
  const auto& radii = pool.materialized();

  // Columns: per-client ball increments delta(v, t) with
  // y(v, rho_t) = sum_{s<=t} delta(v, s), then cost vars, then cov vars.
  std::vector<int> col0(n, 0);
  int ncols = 0;
  for (int v = 0; v < n; ++v) {
    col0[v] = ncols;
    ncols += static_cast<int>(radii[v].size());
  }
  const int cost0 = ncols;
  if (has_cost) ncols += n;
  const int cov0 = ncols;
  if (has_cov) ncols += n;

  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  std::vector<RowSense> senses;

  auto transform = [&](const LinearConstraint& row) {
    Eigen::VectorXd coef = Eigen::VectorXd::Zero(ncols);
    for (const auto& [var, c] : row.terms) {
      switch (var.kind) {
        case VarKind::Cost:
          coef[cost0 + var.client] += c;
          break;
        case VarKind::Cov:
          coef[cov0 + var.client] += c;
          break;
        case VarKind::Ball: {
          int t = radius_index(radii[var.client], var.radius);
          if (t < 0)
            throw NumericalFailure("ball variable off the materialized list");
          coef[col0[var.client] + t] += c;
          break;
        }
      }
    }
    // y(v, rho_t) is the prefix sum of increments; a coefficient at index t
    // lands on every delta(v, s) with s <= t.
    for (int v = 0; v < n; ++v) {
      double acc = 0.0;
      for (int t = static_cast<int>(radii[v].size()) - 1; t >= 0; --t) {
        acc += coef[col0[v] + t];
        coef[col0[v] + t] = acc;
      }
    }
    // Rows made vacuous by delta >= 0 (e.g. concentric monotonicity).
    double pos = 0.0, neg = 0.0;
    for (int j = 0; j < ncols; ++j) {
      pos += std::max(coef[j], 0.0);
      neg += std::min(coef[j], 0.0);
    }
    if (row.sense == RowSense::LE && pos <= 1e-15 && row.rhs >= -1e-15) return;
    if (row.sense == RowSense::GE && neg >= -1e-15 && row.rhs <= 1e-15) return;
    rows.push_back(std::move(coef));
    rhs.push_back(row.rhs);
    senses.push_back(row.sense);
  };

  for (const auto& row : pool.all_rows()) transform(row);

  // min(y, 1) is realized structurally: cap the total increment per client.
  for (int v = 0; v < n; ++v) {
    Eigen::VectorXd coef = Eigen::VectorXd::Zero(ncols);
    for (std::size_t t = 0; t < radii[v].size(); ++t) coef[col0[v] + t] = 1.0;
    rows.push_back(std::move(coef));
    rhs.push_back(1.0);
    senses.push_back(RowSense::LE);
  }

  const int m = static_cast<int>(rows.size());
  Eigen::MatrixXd a(m, ncols);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    a.row(i) = rows[i];
    b[i] = rhs[i];
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(ncols);
  if (objective == LpObjective::MinimizeCost && has_cost) {
    for (int v = 0; v < n; ++v) c[cost0 + v] = 1.0;
    // Tie-break toward early mass: also minimize the implied connection
    // integral so the point resembles one induced by an integral solution.
    // Any pool-feasible point is a valid rounding input, so reweighting the
    // objective does not affect correctness.
    const int p = spec.power();
    for (int v = 0; v < n; ++v) {
      const auto& r = radii[v];
      double suffix = 0.0;
      for (int t = static_cast<int>(r.size()) - 1; t >= 1; --t) {
        suffix += std::pow(r[t], p) - std::pow(r[t - 1], p);
        c[col0[v] + t] -= suffix;  // delta at t covers all larger intervals
      }
      c[col0[v]] -= suffix;  // mass at radius zero covers everything
    }
    double cmax = c.cwiseAbs().maxCoeff();
    if (cmax > 0) c /= cmax;
  }

  Simplex solver;
  auto res = solver.solve(a, b, senses, c);

  LpSolveResult out;
  out.iterations = res.iterations;
  if (res.status == LpStatus::Infeasible) {
    out.status = LpSolveResult::Status::Infeasible;
    out.farkas_checked = res.farkas_checked;
    if (!res.farkas_checked)
      throw NumericalFailure("infeasibility certificate failed verification");
    return out;
  }
  if (res.status != LpStatus::Optimal)
    throw NumericalFailure("simplex did not converge");

  FractionalSolution sol;
  sol.radii = radii;
  sol.ball.resize(n);
  sol.cost.assign(n, 0.0);
  sol.cov.assign(n, 0.0);
  for (int v = 0; v < n; ++v) {
    sol.ball[v].resize(radii[v].size());
    double acc = 0.0;
    for (std::size_t t = 0; t < radii[v].size(); ++t) {
      acc += res.x[col0[v] + t];
      sol.ball[v][t] = std::min(acc, 1.0);
    }
    if (has_cost) sol.cost[v] = std::max(res.x[cost0 + v], 0.0);
    if (has_cov) sol.cov[v] = std::clamp(res.x[cov0 + v], 0.0, 1.0);
  }

  auto [viol, tag] = pool.max_violation(sol);
  if (viol > kTauLp)
    throw NumericalFailure("LP point violates pool row " + tag + " by " +
                           std::to_string(viol));
  out.status = LpSolveResult::Status::Solution;
  out.sol = std::move(sol);
  return out;
}

FractionalSolution induced_solution(const ConstraintPool& pool,
                                    const std::vector<int>& centers) {
  const MetricInstance& inst = pool.instance();
  const int n = inst.client_count();
  const int p = pool.spec().power();
  FractionalSolution sol;
  sol.radii = pool.materialized();
  sol.ball.resize(n);
  sol.cost.assign(n, 0.0);
  sol.cov.assign(n, 0.0);
  for (int v = 0; v < n; ++v) {
    double dv = kInf;
    for (int x : centers) dv = std::min(dv, inst.dist(inst.clients[v], x));
    sol.cost[v] = std::pow(dv, p);
    sol.cov[v] = dv <= pool.opt_g() ? 1.0 : 0.0;
    sol.ball[v].resize(sol.radii[v].size());
    for (std::size_t t = 0; t < sol.radii[v].size(); ++t)
      sol.ball[v][t] = dv <= sol.radii[v][t] ? 1.0 : 0.0;
  }
  return sol;
}

}  // namespace contclust
