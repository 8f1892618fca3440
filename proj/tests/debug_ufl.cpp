#include "contclust/instance_io.hpp"
#include "contclust/oracle.hpp"
#include "contclust/round_or_cut.hpp"
#include "contclust/solver_ufl.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace contclust;

int main(int argc, char** argv) {
  std::ifstream in(argv[1]);
  std::ostringstream ss;
  ss << in.rdbuf();
  auto file = io::InstanceFile::parse(ss.str());
  MetricInstance raw = file.to_instance();

  RescaleResult rs = rescale(raw);
  MetricInstance inst = rs.instance;
  ProblemSpec spec = file.problem;
  spec.lambda *= rs.scale;

  GridConfig gc;
  RadiusGrid grid = build_grid(inst, spec, gc);
  std::printf("scale %.6g\n", rs.scale);
  for (int v = 0; v < inst.client_count(); ++v)
    std::printf("client %d: grid size %zu rmax %.6g\n", v, grid.size(v),
                grid.r_max[v]);

  double g = (argc > 2 ? atof(argv[2]) : 1.0) * rs.scale;
  ConstraintPool pool = build_base(inst, spec, grid, g);
  for (int it = 0; it < 2000; ++it) {
    LpSolveResult lp = solve_lp(pool, LpObjective::MinimizeCost);
    if (lp.status == LpSolveResult::Status::Infeasible) {
      std::printf("iter %d: infeasible\n", it);
      return 0;
    }
    RoundOutcome out = ufl::attempt_round(lp.sol, inst, grid, g, spec.lambda);
    if (out.kind == RoundOutcome::Kind::Accept) {
      std::printf("iter %d: accept cost %.6g (scaled)\n", it,
                  out.solution.cost);
      return 0;
    }
    int added = pool.add_cut(out.cut) ? 1 : 0;
    for (const auto& c : out.extra) added += pool.add_cut(c) ? 1 : 0;
    std::printf("iter %d: viol %.3g added %d (extra %zu) lp_iters %d\n", it,
                out.violation, added, out.extra.size(), lp.iterations);
    if (added == 0) {
      std::printf("DUPLICATE CUT\n");
      return 1;
    }
  }
  return 0;
}
