#include "contclust/hardness.hpp"
#include "contclust/instance_io.hpp"
#include "contclust/oracle.hpp"
#include "contclust/round_or_cut.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace contclust;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitLimit = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io::ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
}

int run_solve(const std::string& path, const std::string& out_path,
              const std::string& trace_path) {
  io::InstanceFile file;
  MetricInstance inst;
  try {
    file = io::InstanceFile::parse(read_file(path));
    inst = file.to_instance();
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  auto violations = validate_metric(inst);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "invalid metric: " << v << "\n";
    return kExitParse;
  }

  SolveConfig cfg;
  if (file.has_config) cfg.grid = file.config;
  SearchResult res = search(inst, file.problem, cfg);

  if (!trace_path.empty()) {
    std::ofstream t(trace_path);
    res.trace.write_csv(t);
  }
  switch (res.status) {
    case SearchResult::Status::Solved: {
      auto sf = io::SolutionFile::from_solution(inst, res.solution);
      write_output(out_path, sf.serialize());
      return kExitOk;
    }
    case SearchResult::Status::Infeasible:
      std::cerr << "certified infeasible\n";
      return kExitInfeasible;
    case SearchResult::Status::LimitExceeded:
      std::cerr << "cut limit exceeded\n";
      return kExitLimit;
  }
  return kExitLimit;
}

int run_exact(const std::string& path) {
  io::InstanceFile file;
  MetricInstance inst;
  try {
    file = io::InstanceFile::parse(read_file(path));
    inst = file.to_instance();
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  ExactResult res = exact_solve(inst, file.problem);
  switch (res.status) {
    case ExactResult::Status::Solved: {
      std::cout << "value " << res.value << "\n";
      std::cout << "centers";
      for (int c : res.centers) std::cout << " " << c;
      std::cout << "\n";
      std::cout << "enumerated " << res.enumerated << "\n";
      return kExitOk;
    }
    case ExactResult::Status::Infeasible:
      std::cout << "infeasible\n";
      return kExitInfeasible;
    case ExactResult::Status::TooLarge:
      std::cerr << "enumeration budget exceeded\n";
      return kExitLimit;
  }
  return kExitLimit;
}

int run_bench(const std::string& dir, const std::string& out_path) {
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());

  std::ostringstream csv;
  csv << "instance,kind,n,k_or_lambda,exact_opt,alg_cost,ratio,factor_bound,"
         "cuts,iterations,wall_ms,status\n";
  for (const auto& p : paths) {
    csv << p.filename().string() << ",";
    io::InstanceFile file;
    MetricInstance inst;
    try {
      file = io::InstanceFile::parse(read_file(p.string()));
      inst = file.to_instance();
    } catch (const io::ParseError&) {
      csv << ",,,,,,,,,parse_error\n";
      continue;
    }
    const auto& prob = file.problem;
    csv << to_string(prob.kind) << "," << inst.client_count() << ",";
    if (prob.kind == ProblemKind::UFL) csv << prob.lambda;
    else csv << prob.k;
    csv << ",";

    ExactResult ex = exact_solve(inst, prob);
    bool have_exact = ex.status == ExactResult::Status::Solved;
    if (have_exact) csv << ex.value;
    else csv << "NA";
    csv << ",";

    SolveConfig cfg;
    if (file.has_config) cfg.grid = file.config;
    auto t0 = std::chrono::steady_clock::now();
    std::string status = "ok";
    try {
      SearchResult res = search(inst, prob, cfg);
      auto ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      if (res.status == SearchResult::Status::Solved) {
        double cost = res.solution.cost;
        csv << cost << ",";
        if (have_exact && ex.value > 0) csv << cost / ex.value;
        else csv << "NA";
        csv << "," << res.solution.cert.factor_bound << ","
            << res.trace.total_cuts << ","
            << res.solution.cert.iterations << "," << ms << ",ok\n";
        continue;
      }
      status = res.status == SearchResult::Status::Infeasible ? "infeasible"
                                                              : "cut_limit";
      if (status == "infeasible" &&
          ex.status == ExactResult::Status::Infeasible)
        status = "infeasible_agree";
      csv << ",,,," << "," << ms << "," << status << "\n";
    } catch (const std::exception& e) {
      auto ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      csv << ",,,,," << ms << ",error\n";
    }
  }
  write_output(out_path, csv.str());
  return kExitOk;
}

int run_gen_random(ProblemKind kind, int n, int dim, const std::string& norm,
                   int extra, unsigned seed, int k, int p, double lambda,
                   int m, const std::string& out_path) {
  auto file = io::gen_random(kind, n, dim, norm, extra, seed, k, p, lambda, m);
  MetricInstance inst = file.to_instance();
  auto violations = validate_metric(inst);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "generator bug: " << v << "\n";
    return kExitParse;
  }
  write_output(out_path, file.serialize());
  return kExitOk;
}

int run_gen_hardness(const std::string& graph_path, double eps,
                     const std::string& parts_path,
                     const std::string& out_path) {
  std::ifstream gin(graph_path);
  if (!gin) {
    std::cerr << "error: cannot open " << graph_path << "\n";
    return kExitParse;
  }
  hardness::Graph g;
  try {
    g = hardness::parse_edge_list(gin);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  std::vector<std::vector<int>> parts;
  bool have_parts = false;
  if (!parts_path.empty()) {
    std::ifstream pin(parts_path);
    if (!pin) {
      std::cerr << "error: cannot open " << parts_path << "\n";
      return kExitParse;
    }
    std::string line;
    while (std::getline(pin, line)) {
      std::istringstream ls(line);
      std::vector<int> part;
      int v;
      while (ls >> v) part.push_back(v);
      parts.push_back(part);
    }
    have_parts = true;
  }

  hardness::EmbeddedInstance emb;
  try {
    emb = hardness::embed(g, eps, have_parts ? &parts : nullptr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  io::InstanceFile file;
  file.metric_type = "lp_norm";
  file.norm_p = "inf";
  file.points = emb.points;
  for (int v = 0; v < emb.n_clients; ++v) file.clients.push_back(v);
  file.problem.kind = ProblemKind::UFL;
  file.problem.lambda = emb.lambda;
  write_output(out_path, file.serialize());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous clustering and facility location solver suite"};
  app.require_subcommand(1);

  std::string inst_path, out_path, trace_path;
  auto* solve = app.add_subcommand("solve", "round-or-cut solve an instance");
  solve->add_option("instance", inst_path)->required();
  solve->add_option("--out", out_path, "solution file (default stdout)");
  solve->add_option("--trace", trace_path, "search trace CSV");

  std::string exact_path;
  auto* exact = app.add_subcommand("exact", "brute-force optimum");
  exact->add_option("instance", exact_path)->required();

  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  std::string kind_str = "kp", norm = "2", gen_out;
  int n = 8, dim = 2, extra = 8, k = 2, p = 1, m = 1;
  unsigned seed = 1;
  double lambda = 1.0;
  auto* rnd = gen->add_subcommand("random", "uniform random points");
  rnd->add_option("--kind", kind_str, "ufl|fair_kmedian|kp|kcwo");
  rnd->add_option("--n", n);
  rnd->add_option("--dim", dim);
  rnd->add_option("--norm", norm, "1|2|inf");
  rnd->add_option("--extra", extra, "candidate-only points");
  rnd->add_option("--seed", seed);
  rnd->add_option("--k", k);
  rnd->add_option("--p", p);
  rnd->add_option("--lambda", lambda);
  rnd->add_option("--m", m);
  rnd->add_option("--out", gen_out);

  std::string graph_path, parts_path, hard_out;
  double eps = 0.1;
  auto* hard = gen->add_subcommand("hardness", "graph to l_inf UFL instance");
  hard->add_option("--graph", graph_path)->required();
  hard->add_option("--eps", eps);
  hard->add_option("--parts", parts_path, "independent parts, one per line");
  hard->add_option("--out", hard_out);

  std::string bench_dir, bench_out;
  auto* bench = app.add_subcommand("bench", "run a directory of instances");
  bench->add_option("directory", bench_dir)->required();
  bench->add_option("--out", bench_out, "CSV output (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(inst_path, out_path, trace_path);
    if (*exact) return run_exact(exact_path);
    if (*bench) return run_bench(bench_dir, bench_out);
    if (*gen) {
      if (*rnd) {
        ProblemKind kind;
        if (kind_str == "ufl") kind = ProblemKind::UFL;
        else if (kind_str == "fair_kmedian") kind = ProblemKind::FairKMedian;
        else if (kind_str == "kp") kind = ProblemKind::KP;
        else if (kind_str == "kcwo") kind = ProblemKind::KCWO;
        else {
          std::cerr << "error: unknown kind " << kind_str << "\n";
          return kExitParse;
        }
        if (n < 1 || dim < 1 || extra < 0 || k < 1 || p < 1 || lambda < 0) {
          std::cerr << "error: bad generator parameters\n";
          return kExitParse;
        }
        return run_gen_random(kind, n, dim, norm, extra, seed, k, p, lambda,
                              m, gen_out);
      }
      if (*hard) {
        if (eps <= 0 || eps >= 1) {
          std::cerr << "error: eps must lie in (0,1)\n";
          return kExitParse;
        }
        return run_gen_hardness(graph_path, eps, parts_path, hard_out);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLimit;
  }
  return kExitParse;
}
