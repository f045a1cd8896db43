#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "onmf/onmf.hpp"

namespace onmf::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::string input;
  std::string solver = "ls";
  int rank = 0;
  SolverConfig defaults;
  double alpha = defaults.alpha;
  double beta = defaults.beta;
  double delta = defaults.delta;
  double sigma = defaults.sigma;
  double step = defaults.step;
  int max_iter = defaults.max_iter;
  int max_inner_iter = defaults.max_inner_iter;
  std::uint64_t seed = defaults.seed;
  bool normalize = false;
  bool normalize_b = false;
  std::optional<double> kkt_tol;
  std::string labels;
  std::string out;

  CLI::Option* alpha_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* normalize_b_opt = nullptr;
};

void add_run_options(CLI::App* app, RunOptions& o) {
  app->add_option("--input", o.input, "MatrixMarket data matrix")->required();
  app->add_option("--solver", o.solver, "ls|d-u|d-b|mu-u|au-u|mu-b|au-b")->capture_default_str();
  app->add_option("--rank", o.rank, "factorization rank K")->required();
  o.alpha_opt = app->add_option("--alpha", o.alpha, "orthogonality weight on C")
                    ->capture_default_str();
  o.beta_opt =
      app->add_option("--beta", o.beta, "orthogonality weight on B")->capture_default_str();
  app->add_option("--delta", o.delta, "denominator stabilizer")->capture_default_str();
  app->add_option("--sigma", o.sigma, "zero-locking escape floor")->capture_default_str();
  app->add_option("--step", o.step, "damping growth factor")->capture_default_str();
  app->add_option("--max-iter", o.max_iter, "outer iterations")->capture_default_str();
  app->add_option("--max-inner-iter", o.max_inner_iter, "damping attempts per factor")
      ->capture_default_str();
  app->add_option("--seed", o.seed, "initialization seed")->capture_default_str();
  app->add_flag("--normalize", o.normalize, "scale columns of A by (A^T A e)^(-1/2)");
  o.normalize_b_opt =
      app->add_flag("--normalize-b", o.normalize_b, "unit-length columns of B (ls only)");
  app->add_option("--kkt-tol", o.kkt_tol, "record the KKT residual per iteration");
  app->add_option("--labels", o.labels, "document labels, scored against C");
  app->add_option("--out", o.out, "output directory")->required();
}

SolverConfig resolve(const RunOptions& o) {
  SolverConfig c;
  try {
    c.solver = parse_solver_kind(o.solver);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  const std::string name(to_string(c.solver));
  if (o.alpha_opt->count() > 0 && !uses_alpha(c.solver)) {
    throw UsageError("--alpha does not apply to solver " + name);
  }
  if (o.beta_opt->count() > 0 && !uses_beta(c.solver)) {
    throw UsageError("--beta does not apply to solver " + name);
  }
  if (o.normalize_b_opt->count() > 0 && c.solver != SolverKind::LS) {
    throw UsageError("--normalize-b applies only to solver ls");
  }
  c.rank = o.rank;
  c.alpha = uses_alpha(c.solver) ? o.alpha : 0.0;
  c.beta = uses_beta(c.solver) ? o.beta : 0.0;
  c.delta = o.delta;
  c.sigma = o.sigma;
  c.step = o.step;
  c.max_iter = o.max_iter;
  c.max_inner_iter = o.max_inner_iter;
  c.seed = o.seed;
  c.normalize_B = o.normalize_b;
  c.kkt_tolerance = o.kkt_tol;
  return c;
}

DataMatrix load_input(const RunOptions& o) {
  DataMatrix A = read_matrix_market(fs::path(o.input));
  return o.normalize ? normalize_columns(A) : A;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json config_json(const SolverConfig& c) {
  Json j;
  j["solver"] = std::string(to_string(c.solver));
  j["rank"] = c.rank;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["delta"] = c.delta;
  j["sigma"] = c.sigma;
  j["step"] = c.step;
  j["max_iter"] = c.max_iter;
  j["max_inner_iter"] = c.max_inner_iter;
  j["seed"] = c.seed;
  j["normalize_B"] = c.normalize_B;
  j["kkt_tolerance"] = c.kkt_tolerance ? Json(*c.kkt_tolerance) : Json(nullptr);
  return j;
}

Json scores_json(const ClusteringScores& s) {
  return Json{{"mi", s.mutual_information},
              {"entropy", s.entropy},
              {"purity", s.purity},
              {"fmeasure", s.fmeasure}};
}

Json trace_json(const IterationTrace& t) {
  return Json{{"iterations", static_cast<int>(t.size()) - 1},
              {"initial_objective", t.initial_objective()},
              {"final_objective", t.final_objective()},
              {"inner_iters", t.total_inner_iters()},
              {"violations", t.violation_count()}};
}

void write_json(const Json& j, const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << j.dump(2) << '\n';
  if (!out.flush()) {
    throw IoError("write to '" + path.string() + "' failed");
  }
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  }
}

Json input_json(const RunOptions& o, const DataMatrix& A) {
  return Json{{"matrix", o.input},
              {"rows", A.rows()},
              {"cols", A.cols()},
              {"nonzeros", A.nonzeros()},
              {"normalize", o.normalize},
              {"labels", o.labels.empty() ? Json(nullptr) : Json(o.labels)}};
}

void print_scores(const ClusteringScores& s, std::ostream& out) {
  out << "mi " << g17(s.mutual_information) << '\n'
      << "entropy " << g17(s.entropy) << '\n'
      << "purity " << g17(s.purity) << '\n'
      << "fmeasure " << g17(s.fmeasure) << '\n';
}

ClusteringScores score_side(const FactorSet& F, const LabelSet& labels, bool doc_side) {
  const ClusterAssignment pred = doc_side ? assign_from_C(F.C) : assign_words_from_B(F.B);
  return score(contingency(pred, labels.indices));
}

int cmd_factorize(const RunOptions& o, std::ostream& out) {
  const SolverConfig config = resolve(o);
  const DataMatrix A = load_input(o);
  const RunResult result = solve(A, config);

  const fs::path dir(o.out);
  make_dir(dir);
  write_trace_csv(result.trace, dir / "trace.csv");
  write_factors(result.factors, dir);

  Json manifest{{"command", "factorize"},
                {"config", config_json(config)},
                {"input", input_json(o, A)},
                {"output", o.out},
                {"trace", trace_json(result.trace)}};
  if (!o.labels.empty()) {
    const LabelSet labels = read_labels(fs::path(o.labels));
    const ClusteringScores s = score_side(result.factors, labels, true);
    write_scores_csv(s, dir / "metrics.csv");
    manifest["metrics"] = scores_json(s);
    print_scores(s, out);
  }
  write_json(manifest, dir / "manifest.json");

  out << "solver " << to_string(config.solver) << '\n'
      << "final_objective " << g17(result.trace.final_objective()) << '\n'
      << "violations " << result.trace.violation_count() << '\n'
      << "inner_iters " << result.trace.total_inner_iters() << '\n'
      << "seconds " << result.trace.wall_seconds << '\n';
  return kOk;
}

struct EvaluateOptions {
  std::string factors;
  std::string labels;
  std::string side = "doc";
  std::string out;
};

int cmd_evaluate(const EvaluateOptions& o, std::ostream& out) {
  const bool doc_side = o.side == "doc";
  const FactorSet F = read_factors(fs::path(o.factors));
  const LabelSet labels = read_labels(fs::path(o.labels));
  const ClusteringScores s = score_side(F, labels, doc_side);
  const fs::path target =
      o.out.empty() ? fs::path(o.factors) / ("metrics_" + o.side + ".csv") : fs::path(o.out);
  write_scores_csv(s, target);
  print_scores(s, out);
  return kOk;
}

struct SweepOptions {
  RunOptions run;
  std::string param = "alpha";
  std::string values;
};

// Splits "a,b,c"; empty list or empty items are usage errors.
std::vector<std::string> split_values(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) {
      throw UsageError("--values contains an empty item");
    }
    out.push_back(item.substr(b, e - b + 1));
  }
  if (out.empty()) {
    throw UsageError("--values is empty");
  }
  return out;
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || used == 0) {
    throw UsageError("not a number: '" + s + "'");
  }
  return v;
}

std::uint64_t parse_seed(const std::string& s) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || used == 0 || s.front() == '-') {
    throw UsageError("not a seed: '" + s + "'");
  }
  return v;
}

int cmd_sweep(const SweepOptions& o, std::ostream& out) {
  const SolverConfig base = resolve(o.run);
  if (o.param == "alpha" && !uses_alpha(base.solver)) {
    throw UsageError("solver " + std::string(to_string(base.solver)) + " has no alpha");
  }
  if (o.param == "beta" && !uses_beta(base.solver)) {
    throw UsageError("solver " + std::string(to_string(base.solver)) + " has no beta");
  }
  const std::vector<std::string> tokens = split_values(o.values);
  std::vector<SolverConfig> configs;
  std::vector<std::string> labels;
  std::set<std::string> seen;
  for (const std::string& t : tokens) {
    SolverConfig c = base;
    std::string label;
    if (o.param == "seed") {
      c.seed = parse_seed(t);
      label = std::to_string(c.seed);
    } else {
      const double v = parse_number(t);
      (o.param == "alpha" ? c.alpha : c.beta) = v;
      label = g17(v);
    }
    if (!seen.insert(label).second) {
      throw UsageError("--values repeats " + label);
    }
    configs.push_back(c);
    labels.push_back(label);
  }

  const DataMatrix A = load_input(o.run);
  const fs::path dir(o.run.out);
  make_dir(dir);

  Json runs = Json::array();
  std::ostringstream summary;
  summary << "value,final_objective,inner_iters,violations\n";
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const RunResult r = solve(A, configs[i]);
    const std::string file = "trace_" + o.param + "_" + labels[i] + ".csv";
    write_trace_csv(r.trace, dir / file);
    summary << labels[i] << ',' << g17(r.trace.final_objective()) << ','
            << r.trace.total_inner_iters() << ',' << r.trace.violation_count() << '\n';
    Json run = trace_json(r.trace);
    run["value"] = labels[i];
    run["trace_file"] = file;
    runs.push_back(std::move(run));
    out << o.param << '=' << labels[i] << " final_objective "
        << g17(r.trace.final_objective()) << " violations " << r.trace.violation_count()
        << '\n';
  }
  {
    std::ofstream f(dir / "summary.csv", std::ios::trunc);
    if (!f || !(f << summary.str()) || !f.flush()) {
      throw IoError("cannot write '" + (dir / "summary.csv").string() + "'");
    }
  }
  write_json(Json{{"command", "sweep"},
                  {"config", config_json(base)},
                  {"input", input_json(o.run, A)},
                  {"output", o.run.out},
                  {"param", o.param},
                  {"runs", runs}},
             dir / "manifest.json");
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orthogonal nonnegative matrix factorization", "onmf"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "onmf 0.1.0");

  RunOptions fact;
  CLI::App* factorize = app.add_subcommand("factorize", "factorize a matrix");
  add_run_options(factorize, fact);

  EvaluateOptions eval;
  CLI::App* evaluate = app.add_subcommand("evaluate", "score clusters against labels");
  evaluate->add_option("--factors", eval.factors, "directory holding B.mtx and C.mtx")
      ->required();
  evaluate->add_option("--labels", eval.labels, "one class label per line")->required();
  evaluate->add_option("--side", eval.side, "doc (clusters from C) or word (from B)")
      ->check(CLI::IsMember({"doc", "word"}))
      ->capture_default_str();
  evaluate->add_option("--out", eval.out, "metrics CSV (default <factors>/metrics_<side>.csv)");

  SweepOptions sweep;
  CLI::App* sw = app.add_subcommand("sweep", "one factorization per parameter value");
  add_run_options(sw, sweep.run);
  sw->add_option("--param", sweep.param, "alpha, beta or seed")
      ->check(CLI::IsMember({"alpha", "beta", "seed"}))
      ->capture_default_str();
  sw->add_option("--values", sweep.values, "comma-separated values")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (factorize->parsed()) {
      return cmd_factorize(fact, out);
    }
    if (evaluate->parsed()) {
      return cmd_evaluate(eval, out);
    }
    return cmd_sweep(sweep, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DampingFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  }
}

}  // namespace onmf::cli
