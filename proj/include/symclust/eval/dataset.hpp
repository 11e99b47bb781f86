#pragma once

#include <string>
#include <vector>

#include "symclust/interp/value.hpp"
#include "symclust/lang/parse.hpp"
#include "symclust/metrics/metrics.hpp"

namespace symclust::eval {

struct Signature {
  std::string name;
  std::vector<std::pair<std::string, lang::SnipType>> params;
  lang::SnipType return_type;
};

struct FollowupResponse {
  lang::SourceSnippet snippet;
  metrics::ResponseProb prob;
};

struct Response {
  lang::SourceSnippet snippet;
  metrics::ResponseProb prob;
  std::vector<FollowupResponse> followups;
};

struct ProblemRecord {
  std::string id;
  Signature signature;
  std::vector<Response> responses;
  std::vector<interp::TestCase> tests;
  std::string top_ranked;  // id of one of `responses`
};

// Loads and validates a dataset file (schema documented in the README).
// Structural violations raise LoadError naming the path into the document;
// snippets that merely fail to parse load fine and are isolated later by
// clustering.
std::vector<ProblemRecord> load_dataset(const std::string& path);

}  // namespace symclust::eval
