#pragma once

#include "contclust/lp_model.hpp"

#include <vector>

namespace contclust {

struct CertInfo {
  double opt_g_used = 0.0;
  double factor_bound = 0.0;
  double slack = 0.0;  // additive grid-gap allowance in the factor check
  bool fairness_ok = true;
  int cuts_added = 0;
  int iterations = 0;
};

/// Integral solution produced by a rounding oracle. Centers are client
/// local indices (all algorithms open centers from C).
struct Solution {
  std::vector<int> centers;
  std::vector<int> assignment;  // per client: the serving center (client id)
  std::vector<int> served;      // KCWO: exactly m clients, ascending
  double cost = 0.0;            // sum objective, or the radius for KCWO
  double radius = 0.0;          // KCWO certified radius
  CertInfo cert;
};

struct RoundOutcome {
  enum class Kind { Accept, Cut };
  Kind kind = Kind::Cut;
  Solution solution;
  SepCut cut;                 // primary (most violated) cut
  std::vector<SepCut> extra;  // further violated cuts from the same point
  double violation = 0.0;

  static RoundOutcome accept(Solution s) {
    RoundOutcome o;
    o.kind = Kind::Accept;
    o.solution = std::move(s);
    return o;
  }
  static RoundOutcome make_cut(SepCut c, double viol) {
    RoundOutcome o;
    o.kind = Kind::Cut;
    o.cut = std::move(c);
    o.violation = viol;
    return o;
  }
};

/// Approximation factor certified by the rounding algorithm of each kind.
double factor_bound(const ProblemSpec& spec);

}  // namespace contclust
