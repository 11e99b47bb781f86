#pragma once

#include <map>
#include <string>
#include <vector>

#include "symclust/cluster/cluster.hpp"

namespace symclust::metrics {

// How response probabilities are approximated: softmax over length-normalized
// log-probabilities, or a uniform 1/n that ignores them entirely.
enum class Mode { LengthNormalized, Uniform };

struct ResponseProb {
  std::string id;
  double total_logprob;   // natural-log units, summed over tokens
  long long token_count;  // >= 1
};

// id -> probability; sums to 1.
using ResponseDistribution = std::map<std::string, double>;

// total_logprob / token_count.
double length_normalize(const ResponseProb& r);

// p_i = exp(v_i - max_j v_j) / sum_k exp(v_k - max_j v_j). Invariant under
// adding a constant to every input.
std::vector<double> softmax(const std::vector<double>& values);

ResponseDistribution uniform_distribution(const std::vector<std::string>& ids);

// Distribution over the given responses in the chosen mode.
ResponseDistribution response_distribution(const std::vector<ResponseProb>& responses,
                                           Mode mode);

// Shannon entropy of the per-cluster probability masses, natural log.
// Requires `d` to cover exactly the ids partitioned by `c`.
double semantic_entropy(const cluster::ClusterSet& c, const ResponseDistribution& d);

// Two prompting iterations: n first-round responses, and for each of them a
// nonempty follow-up batch produced with that response appended to the
// prompt.
struct IterativeRecord {
  std::vector<ResponseProb> initial;
  std::map<std::string, std::vector<ResponseProb>> followups;  // initial id -> batch
};

// Dependence between the first-round cluster and the follow-up cluster.
// The cluster set must partition the union of initial and follow-up ids.
// Marginals aggregate initial-response probabilities per cluster; each
// cluster's conditional row is the probability-weighted average of its
// members' normalized follow-up distributions; the result compares the joint
// against the independent (pseudo-joint) combination, stabilized by gamma1
// and gamma2.
double mutual_information(const IterativeRecord& rec, const cluster::ClusterSet& c,
                          Mode mode, double gamma1, double gamma2);

// Probability of the top-ranked response: exp of the length-normalized
// log-probability in LengthNormalized mode, exp of the raw total otherwise.
double llm_probability_baseline(const ResponseProb& top, Mode mode);

enum class MetricKind { SeNorm, SeUniform, MiNorm, MiUniform, ClusterCount, LlmProb };

// Stable metric names: se-norm, se-uniform, mi-norm, mi-uniform, cc, llm-prob.
const char* metric_name(MetricKind m);
MetricKind parse_metric(const std::string& name);  // UsageError on unknown names
bool metric_uses_followups(MetricKind m);

}  // namespace symclust::metrics
