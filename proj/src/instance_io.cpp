#include "contclust/instance_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace contclust::io {

using nlohmann::json;

namespace {

int byte_to_line(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

Eigen::MatrixXd parse_matrix(const json& rows, const std::string& what) {
  if (!rows.is_array() || rows.empty())
    throw ParseError(what + " must be a non-empty array of rows");
  const std::size_t cols = rows[0].size();
  Eigen::MatrixXd m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols)
      throw ParseError(what + ": ragged rows");
    for (std::size_t j = 0; j < cols; ++j) {
      if (!rows[i][j].is_number())
        throw ParseError(what + ": non-numeric entry");
      m(i, j) = rows[i][j].get<double>();
    }
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

double lp_dist(const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b,
               const std::string& p) {
  Eigen::RowVectorXd diff = (a - b).cwiseAbs();
  if (p == "1") return diff.sum();
  if (p == "2") return diff.norm();
  if (p == "inf") return diff.maxCoeff();
  throw ParseError("unknown lp norm \"" + p + "\"");
}

}  // namespace

MetricInstance InstanceFile::to_instance() const {
  MetricInstance inst;
  if (metric_type == "explicit") {
    if (matrix.rows() != matrix.cols())
      throw ParseError("explicit matrix is not square");
    for (Eigen::Index i = 0; i < matrix.rows(); ++i)
      for (Eigen::Index j = 0; j < matrix.cols(); ++j)
        if (matrix(i, j) != matrix(j, i))
          throw ParseError("explicit matrix is not symmetric");
    inst.dist = matrix;
  } else if (metric_type == "lp_norm") {
    const Eigen::Index np = points.rows();
    inst.dist = Eigen::MatrixXd::Zero(np, np);
    for (Eigen::Index i = 0; i < np; ++i)
      for (Eigen::Index j = i + 1; j < np; ++j) {
        double d = lp_dist(points.row(i), points.row(j), norm_p);
        inst.dist(i, j) = d;
        inst.dist(j, i) = d;
      }
  } else {
    throw ParseError("unknown metric type \"" + metric_type + "\"");
  }

  const int np = inst.point_count();
  for (int c : clients) {
    if (c < 0 || c >= np)
      throw ParseError("client index " + std::to_string(c) + " out of range");
  }
  inst.clients = clients;
  for (int i = 0; i < np; ++i) inst.candidate_points.push_back(i);

  if (problem.kind == ProblemKind::FairKMedian &&
      problem.radii.size() != clients.size())
    throw ParseError("radii length differs from the client count");
  if (problem.kind == ProblemKind::KCWO &&
      (problem.m < 1 || problem.m > static_cast<int>(clients.size())))
    throw ParseError("m must lie in [1, n]");
  return inst;
}

InstanceFile InstanceFile::parse(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(byte_to_line(text, e.byte)) +
                     ": " + e.what());
  }
  InstanceFile f;
  try {
    const json& metric = doc.at("metric");
    f.metric_type = metric.at("type").get<std::string>();
    if (f.metric_type == "explicit")
      f.matrix = parse_matrix(metric.at("matrix"), "metric.matrix");
    else if (f.metric_type == "lp_norm") {
      f.norm_p = metric.at("p").get<std::string>();
      f.points = parse_matrix(metric.at("points"), "metric.points");
    } else {
      throw ParseError("unknown metric type \"" + f.metric_type + "\"");
    }

    f.clients = doc.at("clients").get<std::vector<int>>();
    if (f.clients.empty()) throw ParseError("clients must be non-empty");

    const json& prob = doc.at("problem");
    std::string kind = prob.at("kind").get<std::string>();
    if (kind == "ufl") {
      f.problem.kind = ProblemKind::UFL;
      f.problem.lambda = prob.at("lambda").get<double>();
      if (f.problem.lambda < 0) throw ParseError("lambda must be nonnegative");
    } else if (kind == "fair_kmedian") {
      f.problem.kind = ProblemKind::FairKMedian;
      f.problem.k = prob.at("k").get<int>();
      for (const json& r : prob.at("radii")) {
        if (r.is_string() && r.get<std::string>() == "inf")
          f.problem.radii.push_back(kInf);
        else if (r.is_number() && r.get<double>() >= 0.0)
          f.problem.radii.push_back(r.get<double>());
        else
          throw ParseError("radii entries must be nonnegative or \"inf\"");
      }
    } else if (kind == "kp") {
      f.problem.kind = ProblemKind::KP;
      f.problem.k = prob.at("k").get<int>();
      f.problem.p = prob.at("p").get<int>();
      if (f.problem.p < 1) throw ParseError("p must be at least 1");
    } else if (kind == "kcwo") {
      f.problem.kind = ProblemKind::KCWO;
      f.problem.k = prob.at("k").get<int>();
      f.problem.m = prob.at("m").get<int>();
    } else {
      throw ParseError("unknown problem kind \"" + kind + "\"");
    }
    if (f.problem.kind != ProblemKind::UFL && f.problem.k < 1)
      throw ParseError("k must be positive");

    if (doc.contains("config")) {
      f.has_config = true;
      const json& cfg = doc["config"];
      if (cfg.contains("eps_grid"))
        f.config.eps_grid = cfg["eps_grid"].get<double>();
      if (cfg.contains("eps_abs"))
        f.config.eps_abs = cfg["eps_abs"].get<double>();
      if (cfg.contains("seed")) f.seed = cfg["seed"].get<unsigned>();
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance document: ") + e.what());
  }
  return f;
}

std::string InstanceFile::serialize() const {
  json doc;
  if (metric_type == "explicit")
    doc["metric"] = {{"type", "explicit"}, {"matrix", matrix_to_json(matrix)}};
  else
    doc["metric"] = {{"type", "lp_norm"},
                     {"p", norm_p},
                     {"points", matrix_to_json(points)}};
  doc["clients"] = clients;

  json prob;
  switch (problem.kind) {
    case ProblemKind::UFL:
      prob = {{"kind", "ufl"}, {"lambda", problem.lambda}};
      break;
    case ProblemKind::FairKMedian: {
      json radii = json::array();
      for (double r : problem.radii) {
        if (std::isfinite(r)) radii.push_back(r);
        else radii.push_back("inf");
      }
      prob = {{"kind", "fair_kmedian"}, {"k", problem.k}, {"radii", radii}};
      break;
    }
    case ProblemKind::KP:
      prob = {{"kind", "kp"}, {"k", problem.k}, {"p", problem.p}};
      break;
    case ProblemKind::KCWO:
      prob = {{"kind", "kcwo"}, {"k", problem.k}, {"m", problem.m}};
      break;
  }
  doc["problem"] = prob;
  if (has_config) {
    json cfg;
    if (config.eps_grid > 0) cfg["eps_grid"] = config.eps_grid;
    if (config.eps_abs > 0) cfg["eps_abs"] = config.eps_abs;
    cfg["seed"] = seed;
    doc["config"] = cfg;
  }
  return doc.dump(2) + "\n";
}

SolutionFile SolutionFile::parse(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("solution document: ") + e.what());
  }
  SolutionFile f;
  try {
    f.centers = doc.at("centers").get<std::vector<int>>();
    f.assignment = doc.at("assignment").get<std::vector<int>>();
    if (doc.contains("served"))
      f.served = doc["served"].get<std::vector<int>>();
    f.cost = doc.at("cost").get<double>();
    f.opt_g_used = doc.at("opt_g_used").get<double>();
    const json& cert = doc.at("certificate");
    f.factor_bound = cert.at("factor_bound").get<double>();
    f.fairness_ok = cert.at("fairness_ok").get<bool>();
    f.cuts_added = cert.at("cuts_added").get<int>();
    f.iterations = cert.at("iterations").get<int>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("solution document: ") + e.what());
  }
  return f;
}

std::string SolutionFile::serialize() const {
  json doc;
  doc["centers"] = centers;
  doc["assignment"] = assignment;
  if (!served.empty()) doc["served"] = served;
  doc["cost"] = cost;
  doc["opt_g_used"] = opt_g_used;
  doc["certificate"] = {{"factor_bound", factor_bound},
                        {"fairness_ok", fairness_ok},
                        {"cuts_added", cuts_added},
                        {"iterations", iterations}};
  return doc.dump(2) + "\n";
}

SolutionFile SolutionFile::from_solution(const MetricInstance& inst,
                                         const Solution& sol) {
  SolutionFile f;
  for (int c : sol.centers) f.centers.push_back(inst.clients[c]);
  for (int c : sol.assignment) f.assignment.push_back(inst.clients[c]);
  for (int v : sol.served) f.served.push_back(inst.clients[v]);
  f.cost = sol.cost;
  f.opt_g_used = sol.cert.opt_g_used;
  f.factor_bound = sol.cert.factor_bound;
  f.fairness_ok = sol.cert.fairness_ok;
  f.cuts_added = sol.cert.cuts_added;
  f.iterations = sol.cert.iterations;
  return f;
}

double uniform01(std::mt19937& rng) {
  const std::uint64_t a = rng() >> 5;  // 27 bits
  const std::uint64_t b = rng() >> 6;  // 26 bits
  return (static_cast<double>(a) * 67108864.0 + static_cast<double>(b)) *
         (1.0 / 9007199254740992.0);  // 2^53
}

InstanceFile gen_random(ProblemKind kind, int n, int dim,
                        const std::string& norm, int extra, unsigned seed,
                        int k, int p, double lambda, int m) {
  std::mt19937 rng(seed);
  InstanceFile f;
  f.metric_type = "lp_norm";
  f.norm_p = norm;
  f.points = Eigen::MatrixXd(n + extra, dim);
  for (int i = 0; i < n + extra; ++i)
    for (int j = 0; j < dim; ++j) f.points(i, j) = uniform01(rng);
  for (int i = 0; i < n; ++i) f.clients.push_back(i);

  f.problem.kind = kind;
  switch (kind) {
    case ProblemKind::UFL:
      f.problem.lambda = lambda;
      break;
    case ProblemKind::KP:
      f.problem.k = k;
      f.problem.p = p;
      break;
    case ProblemKind::KCWO:
      f.problem.k = k;
      f.problem.m = std::max(1, std::min(m, n));
      break;
    case ProblemKind::FairKMedian: {
      f.problem.k = k;
      // Radii around a random feasible center set, occasionally infinite.
      std::vector<int> anchor;
      for (int i = 0; i < k; ++i)
        anchor.push_back(static_cast<int>(rng() % (n + extra)));
      for (int v = 0; v < n; ++v) {
        if (uniform01(rng) < 0.15) {
          f.problem.radii.push_back(kInf);
          continue;
        }
        double d = kInf;
        for (int a : anchor)
          d = std::min(d, lp_dist(f.points.row(v), f.points.row(a), norm));
        double eta = 1.05 + 1.45 * uniform01(rng);
        f.problem.radii.push_back(eta * d + 0.02);
      }
      break;
    }
  }
  f.has_config = true;
  f.seed = seed;
  return f;
}

}  // namespace contclust::io
