#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace symclust::eval {

struct ScoredProblem {
  std::string problem_id;
  double uncertainty;
  double correctness;  // in [0, 1]
};

struct LabeledSample {
  ScoredProblem scored;
  bool correct;
};

// Labels correct iff correctness strictly exceeds the threshold.
std::vector<LabeledSample> label_correctness(const std::vector<ScoredProblem>& scored,
                                             double correctness_threshold);

// Randomly removes samples of the majority label until the counts balance;
// survivors keep their input order. Deterministic for a given seed.
std::vector<LabeledSample> downsample(const std::vector<LabeledSample>& samples,
                                      std::uint64_t seed);

// Acceptance rule: predict correct iff uncertainty <= threshold. Candidate
// thresholds are midpoints between consecutive distinct uncertainties plus
// below-min and above-max sentinels; the smallest accuracy-maximizing
// candidate wins.
double fit_threshold(const std::vector<LabeledSample>& train);

struct FoldStats {
  double threshold;  // fitted on the fold's complement
  double accuracy;
  double false_positive_rate;
  double false_negative_rate;
  std::size_t size;
};

struct AbstentionReport {
  double threshold;  // mean of the per-fold fitted thresholds
  double accuracy;
  double false_positive_rate;  // incorrect but accepted, over validation size
  double false_negative_rate;  // correct but rejected, over validation size
  int folds;
  std::uint64_t seed;
  std::vector<FoldStats> fold_stats;
};

// Downsample, shuffle, split into `folds` parts; fit on the complement of
// each fold and evaluate on the fold; rates are sample-weighted averages.
// accuracy + false positives + false negatives = 1 on every fold.
AbstentionReport abstention_eval(const std::vector<ScoredProblem>& scored,
                                 double correctness_threshold, int folds,
                                 std::uint64_t seed);

}  // namespace symclust::eval
