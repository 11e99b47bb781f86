#include "symclust/eval/abstention.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "symclust/errors.hpp"

namespace symclust::eval {

namespace {

// Unbiased bounded draw so shuffles do not depend on the standard library's
// unspecified std::shuffle algorithm.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

void fisher_yates(std::vector<size_t>& idx, std::mt19937_64& rng) {
  for (size_t i = idx.size(); i > 1; --i)
    std::swap(idx[i - 1], idx[draw_below(rng, i)]);
}

}  // namespace

std::vector<LabeledSample> label_correctness(const std::vector<ScoredProblem>& scored,
                                             double correctness_threshold) {
  if (correctness_threshold < 0.0 || correctness_threshold > 1.0)
    throw UsageError("correctness threshold must lie in [0, 1]");
  std::vector<LabeledSample> out;
  out.reserve(scored.size());
  for (const ScoredProblem& s : scored)
    out.push_back({s, s.correctness > correctness_threshold});
  return out;
}

std::vector<LabeledSample> downsample(const std::vector<LabeledSample>& samples,
                                      std::uint64_t seed) {
  size_t correct = 0, incorrect = 0;
  for (const auto& s : samples) (s.correct ? correct : incorrect)++;
  if (correct == 0 || incorrect == 0)
    throw UsageError("downsampling requires at least one sample of each label");
  if (correct == incorrect) return samples;

  const bool drop_correct = correct > incorrect;
  const size_t keep = std::min(correct, incorrect);
  std::vector<size_t> majority;
  for (size_t i = 0; i < samples.size(); ++i)
    if (samples[i].correct == drop_correct) majority.push_back(i);

  std::mt19937_64 rng(seed);
  fisher_yates(majority, rng);
  std::set<size_t> dropped(majority.begin(), majority.begin() + (majority.size() - keep));

  std::vector<LabeledSample> out;
  out.reserve(2 * keep);
  for (size_t i = 0; i < samples.size(); ++i)
    if (!dropped.count(i)) out.push_back(samples[i]);
  return out;
}

double fit_threshold(const std::vector<LabeledSample>& train) {
  if (train.empty()) throw UsageError("threshold fitting requires samples");
  bool has_correct = false, has_incorrect = false;
  for (const auto& s : train) (s.correct ? has_correct : has_incorrect) = true;
  if (!has_correct || !has_incorrect)
    throw UsageError("degenerate fit: training data carries a single label");

  std::vector<double> distinct;
  distinct.reserve(train.size());
  for (const auto& s : train) distinct.push_back(s.scored.uncertainty);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<double> candidates;
  candidates.push_back(distinct.front() - 1.0);
  for (size_t i = 0; i + 1 < distinct.size(); ++i)
    candidates.push_back((distinct[i] + distinct[i + 1]) / 2.0);
  candidates.push_back(distinct.back() + 1.0);

  double best_threshold = candidates.front();
  size_t best_hits = 0;
  bool first = true;
  for (double cand : candidates) {
    size_t hits = 0;
    for (const auto& s : train)
      if ((s.scored.uncertainty <= cand) == s.correct) ++hits;
    if (first || hits > best_hits) {
      best_hits = hits;
      best_threshold = cand;
      first = false;
    }
  }
  return best_threshold;
}

AbstentionReport abstention_eval(const std::vector<ScoredProblem>& scored,
                                 double correctness_threshold, int folds,
                                 std::uint64_t seed) {
  if (folds < 2) throw UsageError("cross-validation requires at least 2 folds");

  std::vector<LabeledSample> balanced =
      downsample(label_correctness(scored, correctness_threshold), seed);
  if (balanced.size() < static_cast<size_t>(2 * folds))
    throw UsageError("not enough samples after downsampling for " +
                     std::to_string(folds) + " folds");

  std::vector<size_t> order(balanced.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  // Independent stream from the downsampling draw.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  fisher_yates(order, rng);

  // Contiguous folds over the shuffled order; the first (n % folds) folds
  // take one extra sample.
  const size_t n = balanced.size();
  const size_t base = n / folds, extra = n % folds;
  std::vector<std::vector<size_t>> fold_members(folds);
  size_t cursor = 0;
  for (int f = 0; f < folds; ++f) {
    size_t len = base + (static_cast<size_t>(f) < extra ? 1 : 0);
    for (size_t k = 0; k < len; ++k) fold_members[f].push_back(order[cursor++]);
  }

  double threshold_sum = 0.0;
  size_t accurate = 0, false_pos = 0, false_neg = 0;
  std::vector<FoldStats> fold_stats;
  for (int f = 0; f < folds; ++f) {
    std::vector<LabeledSample> train;
    train.reserve(n - fold_members[f].size());
    for (int g = 0; g < folds; ++g) {
      if (g == f) continue;
      for (size_t idx : fold_members[g]) train.push_back(balanced[idx]);
    }
    const double threshold = fit_threshold(train);
    threshold_sum += threshold;
    size_t fold_acc = 0, fold_fp = 0, fold_fn = 0;
    for (size_t idx : fold_members[f]) {
      const LabeledSample& s = balanced[idx];
      const bool accept = s.scored.uncertainty <= threshold;
      if (accept == s.correct)
        ++fold_acc;
      else if (accept)
        ++fold_fp;
      else
        ++fold_fn;
    }
    accurate += fold_acc;
    false_pos += fold_fp;
    false_neg += fold_fn;
    const double fold_n = static_cast<double>(fold_members[f].size());
    fold_stats.push_back({threshold, fold_acc / fold_n, fold_fp / fold_n,
                          fold_fn / fold_n, fold_members[f].size()});
  }

  const double total = static_cast<double>(n);
  return AbstentionReport{threshold_sum / folds,
                          static_cast<double>(accurate) / total,
                          static_cast<double>(false_pos) / total,
                          static_cast<double>(false_neg) / total,
                          folds,
                          seed,
                          std::move(fold_stats)};
}

}  // namespace symclust::eval
