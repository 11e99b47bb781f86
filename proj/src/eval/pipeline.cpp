#include "symclust/eval/pipeline.hpp"

#include <fstream>

#include <json.hpp>

#include "symclust/errors.hpp"
#include "symclust/interp/interp.hpp"

namespace symclust::eval {

using json = nlohmann::ordered_json;
using metrics::MetricKind;
using metrics::Mode;

namespace {

cluster::ExpectedSignature expected_signature(const ProblemRecord& rec) {
  cluster::ExpectedSignature sig;
  sig.name = rec.signature.name;
  sig.return_type = rec.signature.return_type;
  for (const auto& [name, type] : rec.signature.params) sig.param_types.push_back(type);
  return sig;
}

metrics::IterativeRecord iterative_record(const ProblemRecord& rec) {
  metrics::IterativeRecord it;
  for (const Response& r : rec.responses) {
    it.initial.push_back(r.prob);
    auto& batch = it.followups[r.snippet.id];
    for (const FollowupResponse& f : r.followups) batch.push_back(f.prob);
  }
  return it;
}

std::vector<metrics::ResponseProb> initial_probs(const ProblemRecord& rec) {
  std::vector<metrics::ResponseProb> out;
  out.reserve(rec.responses.size());
  for (const Response& r : rec.responses) out.push_back(r.prob);
  return out;
}

json value_to_json(const interp::Value& v) {
  if (v.is_bool()) return v.as_bool();
  if (v.is_int()) return (long long)v.as_int();
  json arr = json::array();
  for (const auto& e : v.as_array()) arr.push_back((long long)e);
  return arr;
}

void write_json(const std::string& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open " + path + " for writing");
  out << doc.dump(2) << "\n";
}

}  // namespace

cluster::ClusterSet cluster_problem(const ProblemRecord& rec, const PipelineConfig& cfg,
                                    bool include_followups) {
  std::vector<lang::SourceSnippet> snippets;
  for (const Response& r : rec.responses) {
    snippets.push_back(r.snippet);
    if (include_followups)
      for (const FollowupResponse& f : r.followups) snippets.push_back(f.snippet);
  }
  cluster::ClusterOptions opts;
  opts.equiv = cfg.equiv;
  opts.policy = cfg.policy;
  opts.jobs = cfg.jobs;
  opts.signature = expected_signature(rec);
  return cluster::cluster(snippets, opts);
}

double problem_correctness(const ProblemRecord& rec, const PipelineConfig& cfg) {
  const Response* top = nullptr;
  for (const Response& r : rec.responses)
    if (r.snippet.id == rec.top_ranked) top = &r;
  if (!top) throw UsageError("top-ranked response missing from problem " + rec.id);
  lang::ParseResult parsed = lang::parse(top->snippet);
  if (!parsed.valid()) return 0.0;
  // A top response with the wrong entry signature cannot run the tests.
  if (parsed.program->params.size() != rec.signature.params.size()) return 0.0;
  for (size_t i = 0; i < rec.signature.params.size(); ++i)
    if (parsed.program->params[i].type != rec.signature.params[i].second) return 0.0;
  if (parsed.program->return_type != rec.signature.return_type) return 0.0;
  return interp::correctness_score(*parsed.program, rec.tests, cfg.test_step_budget);
}

ProblemScore score_problem(const ProblemRecord& rec, MetricKind metric,
                           const PipelineConfig& cfg) {
  ProblemScore out;
  out.problem_id = rec.id;
  out.correctness = problem_correctness(rec, cfg);

  if (metric == MetricKind::LlmProb) {
    const Response* top = nullptr;
    for (const Response& r : rec.responses)
      if (r.snippet.id == rec.top_ranked) top = &r;
    out.score = metrics::llm_probability_baseline(
        top->prob, cfg.llm_prob_raw ? Mode::Uniform : Mode::LengthNormalized);
    out.cluster_count = cluster_count(cluster_problem(rec, cfg, false));
    return out;
  }

  if (metrics::metric_uses_followups(metric)) {
    metrics::IterativeRecord it = iterative_record(rec);
    for (const auto& [id, batch] : it.followups)
      if (batch.empty())
        throw UsageError("metric " + std::string(metrics::metric_name(metric)) +
                         " requires follow-up responses; problem " + rec.id +
                         " has none for response " + id);
    cluster::ClusterSet clusters = cluster_problem(rec, cfg, true);
    const Mode mode =
        metric == MetricKind::MiNorm ? Mode::LengthNormalized : Mode::Uniform;
    out.score = metrics::mutual_information(it, clusters, mode, cfg.gamma, cfg.gamma);
    out.cluster_count = cluster_count(clusters);
    return out;
  }

  cluster::ClusterSet clusters = cluster_problem(rec, cfg, false);
  out.cluster_count = cluster_count(clusters);
  switch (metric) {
    case MetricKind::ClusterCount:
      out.score = static_cast<double>(out.cluster_count);
      break;
    case MetricKind::SeNorm:
      out.score = metrics::semantic_entropy(
          clusters, metrics::response_distribution(initial_probs(rec),
                                                   Mode::LengthNormalized));
      break;
    case MetricKind::SeUniform:
      out.score = metrics::semantic_entropy(
          clusters, metrics::response_distribution(initial_probs(rec), Mode::Uniform));
      break;
    default:
      throw UsageError("unhandled metric");
  }
  return out;
}

EvaluationResult evaluate_dataset(const std::vector<ProblemRecord>& dataset,
                                  MetricKind metric, const PipelineConfig& cfg,
                                  double correctness_threshold, int folds,
                                  std::uint64_t seed) {
  EvaluationResult result;
  std::vector<double> xs, ys;
  std::vector<ScoredProblem> scored;
  for (const ProblemRecord& rec : dataset) {
    ProblemScore s = score_problem(rec, metric, cfg);
    xs.push_back(s.score);
    ys.push_back(s.correctness);
    // Higher llm-prob means more confidence; flip it so that the shared rule
    // "accept iff uncertainty <= threshold" applies to every metric.
    const double uncertainty = metric == MetricKind::LlmProb ? -s.score : s.score;
    scored.push_back({s.problem_id, uncertainty, s.correctness});
    result.problems.push_back(std::move(s));
  }
  result.correlation = pearson(xs, ys);
  result.abstention = abstention_eval(scored, correctness_threshold, folds, seed);
  return result;
}

void write_score_report(const std::string& path, MetricKind metric,
                        const std::vector<ProblemScore>& scores) {
  json problems = json::array();
  for (const ProblemScore& s : scores) {
    problems.push_back({{"problem_id", s.problem_id},
                        {"metric", metrics::metric_name(metric)},
                        {"score", s.score},
                        {"cluster_count", s.cluster_count},
                        {"correctness", s.correctness}});
  }
  write_json(path, json{{"problems", problems}});
}

void write_eval_report(const std::string& path, MetricKind metric,
                       const EvaluationResult& result) {
  json problems = json::array();
  for (const ProblemScore& s : result.problems) {
    problems.push_back({{"problem_id", s.problem_id},
                        {"metric", metrics::metric_name(metric)},
                        {"score", s.score},
                        {"cluster_count", s.cluster_count},
                        {"correctness", s.correctness}});
  }
  json summary{{"r", result.correlation.r},
               {"p_value", result.correlation.p_value},
               {"n", result.correlation.n},
               {"abstention",
                {{"threshold", result.abstention.threshold},
                 {"accuracy", result.abstention.accuracy},
                 {"false_positive_rate", result.abstention.false_positive_rate},
                 {"false_negative_rate", result.abstention.false_negative_rate},
                 {"folds", result.abstention.folds},
                 {"seed", result.abstention.seed}}}};
  write_json(path, json{{"problems", problems}, {"summary", summary}});
}

void write_cluster_report(
    const std::string& path,
    const std::vector<std::pair<std::string, cluster::ClusterSet>>& per_problem) {
  json problems = json::array();
  for (const auto& [id, cs] : per_problem) {
    json clusters = json::array();
    for (const auto& members : cs.clusters) clusters.push_back(members);
    json verdicts = json::array();
    for (const cluster::PairOutcome& pair : cs.pair_log) {
      json v{{"a", pair.a},
             {"b", pair.b},
             {"verdict", symexec::verdict_name(pair.verdict.verdict)}};
      if (pair.verdict.verdict == symexec::Verdict::NotEquivalent) {
        json cx = json::array();
        for (const auto& val : pair.verdict.counterexample)
          cx.push_back(value_to_json(val));
        v["counterexample"] = cx;
      }
      if (pair.verdict.verdict == symexec::Verdict::Inconclusive)
        v["reason"] = pair.verdict.reason;
      if (pair.transitivity_conflict) v["transitivity_conflict"] = true;
      verdicts.push_back(std::move(v));
    }
    json invalid = json::object();
    for (const auto& [sid, reason] : cs.invalid_reasons) invalid[sid] = reason;
    problems.push_back({{"problem_id", id},
                        {"clusters", clusters},
                        {"verdicts", verdicts},
                        {"invalid", invalid}});
  }
  write_json(path, json{{"problems", problems}});
}

void write_correctness_report(
    const std::string& path, const std::vector<std::pair<std::string, double>>& scores) {
  json problems = json::array();
  for (const auto& [id, c] : scores)
    problems.push_back({{"problem_id", id}, {"correctness", c}});
  write_json(path, json{{"problems", problems}});
}

}  // namespace symclust::eval
