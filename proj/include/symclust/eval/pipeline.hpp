#pragma once

#include <string>
#include <vector>

#include "symclust/cluster/cluster.hpp"
#include "symclust/eval/abstention.hpp"
#include "symclust/eval/dataset.hpp"
#include "symclust/eval/stats.hpp"
#include "symclust/metrics/metrics.hpp"

namespace symclust::eval {

struct PipelineConfig {
  symexec::EquivConfig equiv{};
  cluster::InconclusivePolicy policy = cluster::InconclusivePolicy::MergeOnInconclusive;
  int jobs = 0;
  long long test_step_budget = 1'000'000;
  double gamma = 1e-10;   // MI stabilization, used for both parameters
  bool llm_prob_raw = false;  // llm-prob: raw exp(logprob) instead of length-normalized
};

struct ProblemScore {
  std::string problem_id;
  double score;
  // Cluster count of the partition the metric was computed over: initial
  // responses for se-*/cc/llm-prob, the union with follow-ups for mi-*.
  int cluster_count;
  double correctness;  // of the top-ranked response against the tests
};

// Clusters a problem's responses; with `include_followups` the follow-up
// snippets participate too (required for the mutual-information metrics).
cluster::ClusterSet cluster_problem(const ProblemRecord& rec, const PipelineConfig& cfg,
                                    bool include_followups);

// Test pass rate of the top-ranked response; an invalid top response scores 0.
double problem_correctness(const ProblemRecord& rec, const PipelineConfig& cfg);

ProblemScore score_problem(const ProblemRecord& rec, metrics::MetricKind metric,
                           const PipelineConfig& cfg);

struct EvaluationResult {
  std::vector<ProblemScore> problems;
  CorrelationResult correlation;
  AbstentionReport abstention;
};

// Full pipeline: score every problem, correlate scores with correctness, fit
// and evaluate the abstention policy. For llm-prob the score is negated
// before thresholding so low uncertainty means accept for every metric.
EvaluationResult evaluate_dataset(const std::vector<ProblemRecord>& dataset,
                                  metrics::MetricKind metric, const PipelineConfig& cfg,
                                  double correctness_threshold, int folds,
                                  std::uint64_t seed);

// Report writers. Output is byte-identical across runs given equal inputs.
void write_score_report(const std::string& path, metrics::MetricKind metric,
                        const std::vector<ProblemScore>& scores);
void write_eval_report(const std::string& path, metrics::MetricKind metric,
                       const EvaluationResult& result);
void write_cluster_report(
    const std::string& path,
    const std::vector<std::pair<std::string, cluster::ClusterSet>>& per_problem);
void write_correctness_report(
    const std::string& path, const std::vector<std::pair<std::string, double>>& scores);

}  // namespace symclust::eval
