#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symclust/lang/parse.hpp"
#include "symclust/symexec/equiv.hpp"

namespace symclust::cluster {

// Policy for verdicts that exhausted a bound: merge (treat the pair as
// equivalent) or keep the snippets separate.
enum class InconclusivePolicy { MergeOnInconclusive, SeparateOnInconclusive };

struct PairOutcome {
  std::string a, b;  // snippet ids in input order, a before b
  symexec::EquivVerdict verdict;
  // NotEquivalent pairs that nevertheless share a final cluster because
  // transitive merging overrode them.
  bool transitivity_conflict = false;
};

struct ClusterSet {
  // Disjoint, nonempty, covers every input id. Clusters are ordered by their
  // first member's input position; members keep input order.
  std::vector<std::vector<std::string>> clusters;
  std::vector<PairOutcome> pair_log;
  std::map<std::string, int> cluster_of;
  // id -> diagnostic for snippets isolated as invalid (parse/validation
  // failure or signature mismatch).
  std::map<std::string, std::string> invalid_reasons;
};

// Expected entry signature for a response set, typically the problem's
// declared entry. Valid programs that do not match are isolated as invalid.
struct ExpectedSignature {
  std::string name;
  std::vector<lang::SnipType> param_types;
  lang::SnipType return_type;
};

struct ClusterOptions {
  symexec::EquivConfig equiv{};
  InconclusivePolicy policy = InconclusivePolicy::MergeOnInconclusive;
  int jobs = 0;  // 0 = hardware concurrency
  std::optional<ExpectedSignature> signature;
};

// Partitions a response set into semantic equivalence classes:
//   - invalid snippets become singleton clusters;
//   - valid pairs are compared in canonical (i, j) order, skipping pairs
//     already connected, and merged on Equivalent (and on Inconclusive under
//     the merge policy);
//   - the final partition is the transitive closure of the merge edges.
// Per-snippet analyses may run in parallel; the result is independent of the
// job count and of input permutation (as a partition).
ClusterSet cluster(const std::vector<lang::SourceSnippet>& snippets,
                   const ClusterOptions& opts);

int cluster_count(const ClusterSet& c);

}  // namespace symclust::cluster
