#include "symclust/cluster/cluster.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <set>
#include <thread>

#include "symclust/errors.hpp"

namespace symclust::cluster {

using lang::ParseResult;
using lang::Program;
using lang::SourceSnippet;
using symexec::BehaviorProfile;
using symexec::EquivVerdict;
using symexec::Verdict;

namespace {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void merge(int a, int b) { parent[find(a)] = find(b); }
  bool connected(int a, int b) { return find(a) == find(b); }
};

bool matches_signature(const Program& p, const ExpectedSignature& sig) {
  if (p.name != sig.name || p.return_type != sig.return_type ||
      p.params.size() != sig.param_types.size())
    return false;
  for (size_t i = 0; i < p.params.size(); ++i)
    if (p.params[i].type != sig.param_types[i]) return false;
  return true;
}

std::string signature_text(const ExpectedSignature& sig) {
  std::string out = "fn " + sig.name + "(";
  for (size_t i = 0; i < sig.param_types.size(); ++i) {
    if (i) out += ", ";
    out += lang::type_name(sig.param_types[i]);
  }
  out += ") -> ";
  out += lang::type_name(sig.return_type);
  return out;
}

ExpectedSignature signature_of(const Program& p) {
  ExpectedSignature sig;
  sig.name = p.name;
  sig.return_type = p.return_type;
  for (const auto& param : p.params) sig.param_types.push_back(param.type);
  return sig;
}

// Analyses run one per valid snippet across `jobs` workers. Each analysis is
// a pure function of its program, so scheduling cannot change results.
void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& fn) {
  if (jobs <= 0) jobs = (int)std::thread::hardware_concurrency();
  if (jobs < 1) jobs = 1;
  jobs = std::min<int>(jobs, (int)n);
  if (jobs <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace

ClusterSet cluster(const std::vector<SourceSnippet>& snippets,
                   const ClusterOptions& opts) {
  if (snippets.empty()) throw UsageError("cluster requires at least one snippet");
  {
    std::set<std::string> seen;
    for (const auto& s : snippets) {
      if (s.id.empty()) throw UsageError("snippet ids must be nonempty");
      if (!seen.insert(s.id).second)
        throw UsageError("duplicate snippet id: " + s.id);
    }
  }

  const size_t n = snippets.size();
  std::vector<ParseResult> parsed(n);
  for (size_t i = 0; i < n; ++i) parsed[i] = lang::parse(snippets[i]);

  ClusterSet out;

  // Snippets that fail to parse/validate, or that declare the wrong entry
  // signature, are isolated up front.
  std::optional<ExpectedSignature> expected = opts.signature;
  std::vector<bool> usable(n, false);
  for (size_t i = 0; i < n; ++i) {
    if (!parsed[i].valid()) {
      out.invalid_reasons[snippets[i].id] = parsed[i].error;
      continue;
    }
    if (!expected) expected = signature_of(*parsed[i].program);
    if (!matches_signature(*parsed[i].program, *expected)) {
      out.invalid_reasons[snippets[i].id] =
          "entry signature differs from " + signature_text(*expected);
      continue;
    }
    usable[i] = true;
  }

  // Per-snippet bounded analysis, parallelized; pairwise comparison of the
  // finished profiles is then cheap and runs in canonical order.
  std::vector<BehaviorProfile> profiles(n);
  std::vector<size_t> valid_indices;
  for (size_t i = 0; i < n; ++i)
    if (usable[i]) valid_indices.push_back(i);
  parallel_for(valid_indices.size(), opts.jobs, [&](size_t vi) {
    size_t i = valid_indices[vi];
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::milliseconds(opts.equiv.pair_timeout_ms);
    profiles[i] = symexec::behavior_profile(*parsed[i].program, opts.equiv, deadline);
  });

  UnionFind uf(n);
  for (size_t i = 0; i < n; ++i) {
    if (!usable[i]) continue;
    for (size_t j = i + 1; j < n; ++j) {
      if (!usable[j]) continue;
      if (uf.connected((int)i, (int)j)) continue;  // redundant within a component
      EquivVerdict verdict = symexec::compare_profiles(
          *parsed[i].program, *parsed[j].program, profiles[i], profiles[j], opts.equiv);
      const bool merge =
          verdict.verdict == Verdict::Equivalent ||
          (verdict.verdict == Verdict::Inconclusive &&
           opts.policy == InconclusivePolicy::MergeOnInconclusive);
      out.pair_log.push_back({snippets[i].id, snippets[j].id, std::move(verdict), false});
      if (merge) uf.merge((int)i, (int)j);
    }
  }

  // Scanning members in input order makes clusters come out ordered by their
  // first member's position, with members in input order.
  std::map<int, int> root_to_cluster;
  for (size_t i = 0; i < n; ++i) {
    int root = uf.find((int)i);
    auto [it, inserted] = root_to_cluster.try_emplace(root, (int)out.clusters.size());
    if (inserted) out.clusters.emplace_back();
    out.clusters[it->second].push_back(snippets[i].id);
    out.cluster_of[snippets[i].id] = it->second;
  }

  for (PairOutcome& pair : out.pair_log) {
    if (pair.verdict.verdict == Verdict::NotEquivalent &&
        out.cluster_of[pair.a] == out.cluster_of[pair.b])
      pair.transitivity_conflict = true;
  }
  return out;
}

int cluster_count(const ClusterSet& c) { return (int)c.clusters.size(); }

}  // namespace symclust::cluster
