#include "symclust/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "symclust/errors.hpp"

namespace symclust::metrics {

double length_normalize(const ResponseProb& r) {
  if (r.token_count < 1)
    throw UsageError("token count must be at least 1 for response " + r.id);
  return r.total_logprob / static_cast<double>(r.token_count);
}

std::vector<double> softmax(const std::vector<double>& values) {
  if (values.empty()) throw UsageError("softmax requires a nonempty input");
  for (double v : values)
    if (!std::isfinite(v)) throw UsageError("softmax requires finite inputs");
  const double max = *std::max_element(values.begin(), values.end());
  std::vector<double> out(values.size());
  double total = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    out[i] = std::exp(values[i] - max);
    total += out[i];
  }
  for (double& p : out) p /= total;
  return out;
}

ResponseDistribution uniform_distribution(const std::vector<std::string>& ids) {
  if (ids.empty()) throw UsageError("uniform distribution requires at least one id");
  ResponseDistribution d;
  const double p = 1.0 / static_cast<double>(ids.size());
  for (const auto& id : ids) d[id] = p;
  return d;
}

ResponseDistribution response_distribution(const std::vector<ResponseProb>& responses,
                                           Mode mode) {
  if (responses.empty())
    throw UsageError("response distribution requires at least one response");
  ResponseDistribution d;
  if (mode == Mode::Uniform) {
    const double p = 1.0 / static_cast<double>(responses.size());
    for (const auto& r : responses) d[r.id] = p;
    return d;
  }
  std::vector<double> normalized;
  normalized.reserve(responses.size());
  for (const auto& r : responses) normalized.push_back(length_normalize(r));
  std::vector<double> probs = softmax(normalized);
  for (size_t i = 0; i < responses.size(); ++i) d[responses[i].id] = probs[i];
  return d;
}

double semantic_entropy(const cluster::ClusterSet& c, const ResponseDistribution& d) {
  size_t covered = 0;
  double entropy = 0.0;
  for (const auto& members : c.clusters) {
    double mass = 0.0;
    for (const auto& id : members) {
      auto it = d.find(id);
      if (it == d.end())
        throw UsageError("distribution is missing probability for " + id);
      mass += it->second;
      ++covered;
    }
    if (mass > 0.0) entropy -= mass * std::log(mass);
  }
  if (covered != d.size())
    throw UsageError("distribution carries ids outside the cluster set");
  // A one-point cluster distribution has zero entropy by definition; summing
  // rounded member probabilities must not turn that into noise.
  if (c.clusters.size() == 1) return 0.0;
  return entropy;
}

namespace {

std::vector<double> member_probs(const std::vector<ResponseProb>& rs, Mode mode) {
  if (mode == Mode::Uniform)
    return std::vector<double>(rs.size(), 1.0 / static_cast<double>(rs.size()));
  std::vector<double> normalized;
  normalized.reserve(rs.size());
  for (const auto& r : rs) normalized.push_back(length_normalize(r));
  return softmax(normalized);
}

}  // namespace

double mutual_information(const IterativeRecord& rec, const cluster::ClusterSet& c,
                          Mode mode, double gamma1, double gamma2) {
  if (gamma1 <= 0.0 || gamma2 <= 0.0)
    throw UsageError("stabilization parameters must be positive");
  if (rec.initial.empty()) throw UsageError("mutual information requires responses");
  for (const auto& r : rec.initial) {
    auto it = rec.followups.find(r.id);
    if (it == rec.followups.end() || it->second.empty())
      throw UsageError("mutual information requires a nonempty follow-up batch for " +
                       r.id);
  }

  const size_t k = c.clusters.size();
  auto cluster_index = [&](const std::string& id) {
    auto it = c.cluster_of.find(id);
    if (it == c.cluster_of.end())
      throw UsageError("cluster set does not cover response " + id);
    return static_cast<size_t>(it->second);
  };

  // Marginal over first-round clusters.
  std::vector<double> initial_probs = member_probs(rec.initial, mode);
  std::vector<double> marginal(k, 0.0);
  for (size_t i = 0; i < rec.initial.size(); ++i)
    marginal[cluster_index(rec.initial[i].id)] += initial_probs[i];
  double z = 0.0;
  for (double m : marginal) z += m;
  for (double& m : marginal) m /= z;

  // Conditional rows: for each first-round cluster, the weighted average of
  // its members' follow-up distributions, aggregated into clusters.
  std::vector<std::vector<double>> conditional(k, std::vector<double>(k, 0.0));
  std::vector<double> cluster_weight(k, 0.0);
  for (size_t i = 0; i < rec.initial.size(); ++i)
    cluster_weight[cluster_index(rec.initial[i].id)] += initial_probs[i];
  for (size_t i = 0; i < rec.initial.size(); ++i) {
    const size_t ci = cluster_index(rec.initial[i].id);
    if (cluster_weight[ci] <= 0.0) continue;
    const double weight = initial_probs[i] / cluster_weight[ci];
    const auto& batch = rec.followups.at(rec.initial[i].id);
    std::vector<double> probs = member_probs(batch, mode);
    for (size_t f = 0; f < batch.size(); ++f)
      conditional[ci][cluster_index(batch[f].id)] += weight * probs[f];
  }
  for (size_t i = 0; i < k; ++i) {
    double zi = 0.0;
    for (double v : conditional[i]) zi += v;
    if (zi > 0.0)
      for (double& v : conditional[i]) v /= zi;
  }

  // Follow-up marginal under independence.
  std::vector<double> followup_marginal(k, 0.0);
  for (size_t i = 0; i < k; ++i)
    for (size_t t = 0; t < k; ++t) followup_marginal[t] += marginal[i] * conditional[i][t];

  double info = 0.0;
  for (size_t i = 0; i < k; ++i) {
    if (marginal[i] <= 0.0) continue;
    for (size_t t = 0; t < k; ++t) {
      const double joint = marginal[i] * conditional[i][t];
      if (joint == 0.0) continue;
      const double pseudo = marginal[i] * followup_marginal[t];
      info += joint * std::log((joint + gamma1) / (pseudo + gamma2));
    }
  }
  return info;
}

double llm_probability_baseline(const ResponseProb& top, Mode mode) {
  if (mode == Mode::LengthNormalized) return std::exp(length_normalize(top));
  return std::exp(top.total_logprob);
}

const char* metric_name(MetricKind m) {
  switch (m) {
    case MetricKind::SeNorm: return "se-norm";
    case MetricKind::SeUniform: return "se-uniform";
    case MetricKind::MiNorm: return "mi-norm";
    case MetricKind::MiUniform: return "mi-uniform";
    case MetricKind::ClusterCount: return "cc";
    case MetricKind::LlmProb: return "llm-prob";
  }
  return "?";
}

MetricKind parse_metric(const std::string& name) {
  if (name == "se-norm") return MetricKind::SeNorm;
  if (name == "se-uniform") return MetricKind::SeUniform;
  if (name == "mi-norm") return MetricKind::MiNorm;
  if (name == "mi-uniform") return MetricKind::MiUniform;
  if (name == "cc") return MetricKind::ClusterCount;
  if (name == "llm-prob") return MetricKind::LlmProb;
  throw UsageError("unknown metric: " + name +
                   " (expected se-norm, se-uniform, mi-norm, mi-uniform, cc or llm-prob)");
}

bool metric_uses_followups(MetricKind m) {
  return m == MetricKind::MiNorm || m == MetricKind::MiUniform;
}

}  // namespace symclust::metrics
