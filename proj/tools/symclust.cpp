#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "symclust/errors.hpp"
#include "symclust/eval/pipeline.hpp"
#include "symclust/interp/interp.hpp"
#include "symclust/lang/parse.hpp"
#include "symclust/lang/pretty.hpp"

namespace fs = std::filesystem;
using namespace symclust;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitLoad = 2;
constexpr int kExitInternal = 3;

struct BoundFlags {
  int int_bound = 8;
  int max_array_len = 4;
  int elem_bound = 4;
  int unroll_cap = 32;
  int trace_cap = 4096;
  long long pair_timeout_ms = 10'000;
  long long step_budget = 1'000'000;
  std::string inconclusive_policy = "merge";
  double gamma = 1e-10;
  int jobs = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--int-bound", int_bound,
                    "Scalar int inputs range over [-B, B]")->capture_default_str();
    cmd->add_option("--max-array-len", max_array_len,
                    "Array inputs have lengths 0..L")->capture_default_str();
    cmd->add_option("--elem-bound", elem_bound,
                    "Array elements range over [-E, E]")->capture_default_str();
    cmd->add_option("--unroll-cap", unroll_cap,
                    "Loop iterations explored per loop per path")->capture_default_str();
    cmd->add_option("--trace-cap", trace_cap,
                    "Maximum fully explored paths per program")->capture_default_str();
    cmd->add_option("--pair-timeout-ms", pair_timeout_ms,
                    "Wall-clock budget per equivalence check")->capture_default_str();
    cmd->add_option("--step-budget", step_budget,
                    "Interpreter step budget per execution")->capture_default_str();
    cmd->add_option("--inconclusive-policy", inconclusive_policy,
                    "Treat inconclusive checks as same cluster (merge) or not (separate)")
        ->check(CLI::IsMember({"merge", "separate"}))
        ->capture_default_str();
    cmd->add_option("--gamma", gamma,
                    "Stabilization constant for mutual information")->capture_default_str();
    cmd->add_option("--jobs", jobs,
                    "Concurrent per-snippet analyses (0 = all cores)")->capture_default_str();
  }

  eval::PipelineConfig pipeline() const {
    eval::PipelineConfig cfg;
    cfg.equiv.domain = {int_bound, max_array_len, elem_bound};
    cfg.equiv.unroll_cap = unroll_cap;
    cfg.equiv.trace_cap = trace_cap;
    cfg.equiv.pair_timeout_ms = pair_timeout_ms;
    cfg.equiv.step_budget = step_budget;
    cfg.policy = inconclusive_policy == "merge"
                     ? cluster::InconclusivePolicy::MergeOnInconclusive
                     : cluster::InconclusivePolicy::SeparateOnInconclusive;
    cfg.jobs = jobs;
    cfg.test_step_budget = step_budget;
    cfg.gamma = gamma;
    return cfg;
  }
};

lang::ProgramPtr parse_file_or_exit(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(kExitUsage);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  lang::ParseResult r = lang::parse_text(buf.str());
  if (!r.valid()) {
    std::cerr << path << ":" << r.error << "\n";
    std::exit(kExitUsage);
  }
  return r.program;
}

interp::Value json_to_value(const nlohmann::json& v, lang::SnipType want,
                            const std::string& what) {
  switch (want) {
    case lang::SnipType::Int:
      if (!v.is_number_integer()) throw UsageError(what + ": expected an integer");
      return interp::Value::of_int(v.get<long long>());
    case lang::SnipType::Bool:
      if (!v.is_boolean()) throw UsageError(what + ": expected a boolean");
      return interp::Value::of_bool(v.get<bool>());
    case lang::SnipType::IntArray: {
      if (!v.is_array()) throw UsageError(what + ": expected an array of integers");
      std::vector<lang::BigInt> elems;
      for (const auto& e : v) {
        if (!e.is_number_integer()) throw UsageError(what + ": expected an integer");
        elems.emplace_back(e.get<long long>());
      }
      return interp::Value::of_array(std::move(elems));
    }
  }
  throw UsageError("unreachable type");
}

std::vector<interp::Value> parse_inputs(const std::string& text,
                                        const lang::Program& p) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("--input is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw UsageError("--input must be a JSON array of arguments");
  if (doc.size() != p.params.size())
    throw UsageError("--input carries " + std::to_string(doc.size()) +
                     " arguments, program takes " + std::to_string(p.params.size()));
  std::vector<interp::Value> out;
  for (size_t i = 0; i < doc.size(); ++i)
    out.push_back(json_to_value(doc[i], p.params[i].type,
                                "argument " + std::to_string(i) + " (" +
                                    p.params[i].name + ")"));
  return out;
}

std::string default_out(const std::string& dataset_path, const std::string& suffix) {
  fs::path p(dataset_path);
  fs::path dir = p.parent_path();
  std::string stem = p.stem().string();
  return (dir / (stem + "." + suffix + ".json")).string();
}

std::string format_counterexample(const std::vector<interp::Value>& cx) {
  std::string out = "[";
  for (size_t i = 0; i < cx.size(); ++i) {
    if (i) out += ", ";
    out += cx[i].to_string();
  }
  return out + "]";
}

int cmd_run(const std::string& file, const std::string& input, long long budget) {
  lang::ProgramPtr p = parse_file_or_exit(file);
  std::vector<interp::Value> inputs = parse_inputs(input, *p);
  interp::Outcome o = interp::evaluate(*p, inputs, budget);
  std::cout << o.to_string() << "\n";
  return kExitOk;
}

int cmd_equiv(const std::string& file_a, const std::string& file_b,
              const std::string& mode, const BoundFlags& bounds) {
  lang::ProgramPtr p = parse_file_or_exit(file_a);
  lang::ProgramPtr q = parse_file_or_exit(file_b);
  symexec::EquivConfig cfg = bounds.pipeline().equiv;
  symexec::EquivVerdict v =
      mode == "brute"
          ? symexec::brute_force_equivalence(*p, *q, cfg.domain, cfg.step_budget,
                                             cfg.enum_ceiling)
          : symexec::check_equivalence(*p, *q, cfg);
  switch (v.verdict) {
    case symexec::Verdict::Equivalent:
      std::cout << "Equivalent\n";
      break;
    case symexec::Verdict::NotEquivalent:
      std::cout << "NotEquivalent cx=" << format_counterexample(v.counterexample)
                << "\n";
      break;
    case symexec::Verdict::Inconclusive:
      std::cout << "Inconclusive(" << v.reason << ")\n";
      break;
  }
  return kExitOk;
}

int cmd_cluster(const std::string& dataset_path, std::string out_path,
                const BoundFlags& bounds) {
  auto dataset = eval::load_dataset(dataset_path);
  eval::PipelineConfig cfg = bounds.pipeline();
  std::vector<std::pair<std::string, cluster::ClusterSet>> per_problem;
  for (const auto& rec : dataset)
    per_problem.emplace_back(rec.id, eval::cluster_problem(rec, cfg, false));
  if (out_path.empty()) out_path = default_out(dataset_path, "clusters");
  eval::write_cluster_report(out_path, per_problem);
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_score(const std::string& dataset_path, const std::string& metric_name,
              const std::string& mode, std::string out_path, const BoundFlags& bounds) {
  metrics::MetricKind metric = metrics::parse_metric(metric_name);
  auto dataset = eval::load_dataset(dataset_path);
  eval::PipelineConfig cfg = bounds.pipeline();
  cfg.llm_prob_raw = mode == "raw";
  std::vector<eval::ProblemScore> scores;
  for (const auto& rec : dataset) scores.push_back(eval::score_problem(rec, metric, cfg));
  if (out_path.empty())
    out_path = default_out(dataset_path, "score-" + std::string(metrics::metric_name(metric)));
  eval::write_score_report(out_path, metric, scores);
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_evaluate(const std::string& dataset_path, const std::string& metric_name,
                 const std::string& mode, double correctness_threshold, int folds,
                 std::uint64_t seed, std::string out_path, const BoundFlags& bounds) {
  metrics::MetricKind metric = metrics::parse_metric(metric_name);
  auto dataset = eval::load_dataset(dataset_path);
  eval::PipelineConfig cfg = bounds.pipeline();
  cfg.llm_prob_raw = mode == "raw";
  eval::EvaluationResult result =
      eval::evaluate_dataset(dataset, metric, cfg, correctness_threshold, folds, seed);
  if (out_path.empty())
    out_path = default_out(dataset_path, "eval-" + std::string(metrics::metric_name(metric)));
  eval::write_eval_report(out_path, metric, result);
  std::cout << "pearson r=" << result.correlation.r
            << " p=" << result.correlation.p_value << " n=" << result.correlation.n
            << "\n";
  std::cout << "abstention threshold=" << result.abstention.threshold
            << " accuracy=" << result.abstention.accuracy
            << " fp=" << result.abstention.false_positive_rate
            << " fn=" << result.abstention.false_negative_rate << "\n";
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_correctness(const std::string& dataset_path, std::string out_path,
                    const BoundFlags& bounds) {
  auto dataset = eval::load_dataset(dataset_path);
  eval::PipelineConfig cfg = bounds.pipeline();
  std::vector<std::pair<std::string, double>> scores;
  for (const auto& rec : dataset) {
    double c = eval::problem_correctness(rec, cfg);
    scores.emplace_back(rec.id, c);
    std::cout << rec.id << " " << c << "\n";
  }
  if (out_path.empty()) out_path = default_out(dataset_path, "correctness");
  eval::write_correctness_report(out_path, scores);
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic clustering and uncertainty scoring for candidate programs"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Execute a snippet on concrete inputs");
  std::string run_file, run_input = "[]";
  long long run_budget = interp::kDefaultStepBudget;
  run->add_option("file", run_file, "Snippet file")->required();
  run->add_option("--input", run_input, "JSON array of arguments")->capture_default_str();
  run->add_option("--budget", run_budget, "Step budget")->capture_default_str();

  // equiv
  auto* equiv = app.add_subcommand("equiv", "Check two snippets for equivalence");
  std::string equiv_a, equiv_b, equiv_mode = "symbolic";
  BoundFlags equiv_bounds;
  equiv->add_option("fileA", equiv_a)->required();
  equiv->add_option("fileB", equiv_b)->required();
  equiv->add_option("--mode", equiv_mode, "symbolic or brute")
      ->check(CLI::IsMember({"symbolic", "brute"}))
      ->capture_default_str();
  equiv_bounds.attach(equiv);

  // cluster
  auto* clst = app.add_subcommand("cluster", "Cluster each problem's responses");
  std::string cluster_dataset, cluster_out;
  BoundFlags cluster_bounds;
  clst->add_option("dataset", cluster_dataset)->required();
  clst->add_option("--out", cluster_out, "Report path (default: next to the dataset)");
  cluster_bounds.attach(clst);

  // score
  auto* score = app.add_subcommand("score", "Compute a per-problem uncertainty metric");
  std::string score_dataset, score_metric, score_mode = "norm", score_out;
  std::uint64_t score_seed = 0;
  BoundFlags score_bounds;
  score->add_option("dataset", score_dataset)->required();
  score->add_option("--metric", score_metric,
                    "se-norm, se-uniform, mi-norm, mi-uniform, cc or llm-prob")
      ->required();
  score->add_option("--mode", score_mode, "llm-prob probability: norm or raw")
      ->check(CLI::IsMember({"norm", "raw"}))
      ->capture_default_str();
  score->add_option("--seed", score_seed, "Random seed")->capture_default_str();
  score->add_option("--out", score_out, "Report path (default: next to the dataset)");
  score_bounds.attach(score);

  // evaluate
  auto* ev = app.add_subcommand(
      "evaluate", "Correlate a metric with correctness and fit the abstention policy");
  std::string eval_dataset, eval_metric, eval_mode = "norm", eval_out;
  double eval_threshold = 0.9;
  int eval_folds = 2;
  std::uint64_t eval_seed = 0;
  BoundFlags eval_bounds;
  ev->add_option("dataset", eval_dataset)->required();
  ev->add_option("--metric", eval_metric,
                 "se-norm, se-uniform, mi-norm, mi-uniform, cc or llm-prob")
      ->required();
  ev->add_option("--mode", eval_mode, "llm-prob probability: norm or raw")
      ->check(CLI::IsMember({"norm", "raw"}))
      ->capture_default_str();
  ev->add_option("--correctness-threshold", eval_threshold,
                 "Label correct iff pass rate strictly exceeds this")
      ->capture_default_str();
  ev->add_option("--folds", eval_folds, "Cross-validation folds")->capture_default_str();
  ev->add_option("--seed", eval_seed, "Random seed")->capture_default_str();
  ev->add_option("--out", eval_out, "Report path (default: next to the dataset)");
  eval_bounds.attach(ev);

  // correctness
  auto* corr = app.add_subcommand("correctness",
                                  "Score each problem's top-ranked response");
  std::string corr_dataset, corr_out;
  BoundFlags corr_bounds;
  corr->add_option("dataset", corr_dataset)->required();
  corr->add_option("--out", corr_out, "Report path (default: next to the dataset)");
  corr_bounds.attach(corr);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_file, run_input, run_budget);
    if (equiv->parsed()) return cmd_equiv(equiv_a, equiv_b, equiv_mode, equiv_bounds);
    if (clst->parsed()) return cmd_cluster(cluster_dataset, cluster_out, cluster_bounds);
    if (score->parsed())
      return cmd_score(score_dataset, score_metric, score_mode, score_out, score_bounds);
    if (ev->parsed())
      return cmd_evaluate(eval_dataset, eval_metric, eval_mode, eval_threshold,
                          eval_folds, eval_seed, eval_out, eval_bounds);
    if (corr->parsed()) return cmd_correctness(corr_dataset, corr_out, corr_bounds);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LoadError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLoad;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
