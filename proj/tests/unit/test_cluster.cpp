#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "symclust/cluster/cluster.hpp"
#include "symclust/errors.hpp"

using namespace symclust;
using cluster::ClusterOptions;
using cluster::ClusterSet;
using cluster::InconclusivePolicy;
using lang::SourceSnippet;

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::filesystem::path(SYMCLUST_FIXTURE_DIR) / "corpus" / name);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::set<std::set<std::string>> as_partition(const ClusterSet& c) {
  std::set<std::set<std::string>> out;
  for (const auto& members : c.clusters)
    out.insert(std::set<std::string>(members.begin(), members.end()));
  return out;
}

}  // namespace

TEST_CASE("identical snippets form one cluster") {
  const std::string text = "fn f(x: int) -> int { return x + 1; }";
  ClusterSet c = cluster::cluster(
      {{"a", text}, {"b", text}, {"c", text}}, ClusterOptions{});
  REQUIRE(c.clusters.size() == 1);
  CHECK(c.clusters[0] == std::vector<std::string>{"a", "b", "c"});
  CHECK(cluster_count(c) == 1);
}

TEST_CASE("invalid snippets are isolated singletons") {
  ClusterSet c = cluster::cluster({{"a", "fn f(x: int) -> int { return x + x; }"},
                                   {"b", "fn f(x: int) -> int { return 2 * x; }"},
                                   {"c", "fn f(x: int -> int { return x; }"}},
                                  ClusterOptions{});
  REQUIRE(c.clusters.size() == 2);
  CHECK(c.clusters[0] == std::vector<std::string>{"a", "b"});
  CHECK(c.clusters[1] == std::vector<std::string>{"c"});
  CHECK(c.invalid_reasons.count("c") == 1);
  // No pairwise checks involve the invalid snippet.
  for (const auto& pair : c.pair_log) {
    CHECK(pair.a != "c");
    CHECK(pair.b != "c");
  }
}

TEST_CASE("mixed set: equivalent pair, a loner and an invalid snippet") {
  ClusterSet c = cluster::cluster(
      {{"a", "fn f(x: int) -> int { return x + x; }"},
       {"b", "fn f(x: int) -> int { return x * 2; }"},
       {"c", "fn f(x: int) -> int { return x * 3; }"},
       {"d", "fn f(x: int) -> int { return y; }"}},
      ClusterOptions{});
  CHECK(cluster_count(c) == 3);
  auto partition = as_partition(c);
  CHECK(partition.count({"a", "b"}) == 1);
  CHECK(partition.count({"c"}) == 1);
  CHECK(partition.count({"d"}) == 1);
}

TEST_CASE("the motivating fixtures collapse into one cluster") {
  ClusterSet c = cluster::cluster({{"s1", read_fixture("p2892_v1.snip")},
                                   {"s2", read_fixture("p2892_v2.snip")},
                                   {"s3", read_fixture("p2892_v3.snip")}},
                                  ClusterOptions{});
  REQUIRE(cluster_count(c) == 1);
  CHECK(c.clusters[0].size() == 3);
  for (const auto& pair : c.pair_log)
    CHECK(pair.verdict.verdict == symexec::Verdict::Equivalent);
}

TEST_CASE("clustering is invariant under input permutation") {
  std::vector<SourceSnippet> snippets{
      {"a", read_fixture("sum_for.snip")},   {"b", read_fixture("sum_m1.snip")},
      {"c", read_fixture("sum_while.snip")}, {"d", read_fixture("sum_m2.snip")},
      {"e", read_fixture("sum_sorted.snip")}};
  ClusterSet base = cluster::cluster(snippets, ClusterOptions{});
  auto expected = as_partition(base);
  std::vector<SourceSnippet> shuffled{snippets[3], snippets[0], snippets[4],
                                      snippets[2], snippets[1]};
  CHECK(as_partition(cluster::cluster(shuffled, ClusterOptions{})) == expected);
  CHECK(expected.count({"a", "c", "e"}) == 1);
  CHECK(expected.count({"b"}) == 1);
  CHECK(expected.count({"d"}) == 1);
}

TEST_CASE("pairs already connected are skipped") {
  const std::string text = "fn f(x: int) -> int { return x - 0; }";
  ClusterSet c = cluster::cluster(
      {{"a", text}, {"b", text}, {"c", text}}, ClusterOptions{});
  // (a,b) merges, (a,c) merges, (b,c) is redundant.
  CHECK(c.pair_log.size() == 2);
}

TEST_CASE("result does not depend on the worker count") {
  std::vector<SourceSnippet> snippets{{"a", read_fixture("max_scan.snip")},
                                      {"b", read_fixture("max_sorted.snip")},
                                      {"c", read_fixture("max_m1.snip")},
                                      {"d", read_fixture("max_while.snip")},
                                      {"e", read_fixture("max_m2.snip")}};
  ClusterOptions serial;
  serial.jobs = 1;
  ClusterOptions parallel;
  parallel.jobs = 4;
  ClusterSet a = cluster::cluster(snippets, serial);
  ClusterSet b = cluster::cluster(snippets, parallel);
  CHECK(a.clusters == b.clusters);
  REQUIRE(a.pair_log.size() == b.pair_log.size());
  for (size_t i = 0; i < a.pair_log.size(); ++i) {
    CHECK(a.pair_log[i].a == b.pair_log[i].a);
    CHECK(a.pair_log[i].b == b.pair_log[i].b);
    CHECK(a.pair_log[i].verdict.verdict == b.pair_log[i].verdict.verdict);
    CHECK(a.pair_log[i].verdict.counterexample == b.pair_log[i].verdict.counterexample);
  }
}

TEST_CASE("inconclusive policy decides merging") {
  std::vector<SourceSnippet> snippets{{"a", read_fixture("spin_true.snip")},
                                      {"b", read_fixture("spin_true2.snip")}};
  ClusterOptions merge;
  merge.policy = InconclusivePolicy::MergeOnInconclusive;
  ClusterSet merged = cluster::cluster(snippets, merge);
  CHECK(cluster_count(merged) == 1);
  REQUIRE(merged.pair_log.size() == 1);
  CHECK(merged.pair_log[0].verdict.verdict == symexec::Verdict::Inconclusive);

  ClusterOptions separate;
  separate.policy = InconclusivePolicy::SeparateOnInconclusive;
  CHECK(cluster_count(cluster::cluster(snippets, separate)) == 2);
}

TEST_CASE("transitive merges override pairwise refutations and are logged") {
  // a: known 0 for x <= 0, unexplored beyond; b: known 0 only for x <= -1;
  // c: defined everywhere, 7 at x == 0. Pairwise: (a,b) and (b,c) are
  // inconclusive, (a,c) provably differ at x == 0.
  std::vector<SourceSnippet> snippets{
      {"a", "fn f(x: int) -> int { if x > 0 { while true { } return 0; } "
            "return 0; }"},
      {"b", "fn f(x: int) -> int { if x > -1 { while true { } return 0; } "
            "return 0; }"},
      {"c", "fn f(x: int) -> int { if x == 0 { return 7; } return 0; }"}};
  ClusterOptions opts;
  opts.policy = InconclusivePolicy::MergeOnInconclusive;
  ClusterSet c = cluster::cluster(snippets, opts);
  CHECK(cluster_count(c) == 1);
  bool saw_conflict = false;
  for (const auto& pair : c.pair_log) {
    if (pair.a == "a" && pair.b == "c") {
      CHECK(pair.verdict.verdict == symexec::Verdict::NotEquivalent);
      CHECK(pair.transitivity_conflict);
      saw_conflict = true;
    }
  }
  CHECK(saw_conflict);
}

TEST_CASE("declared signatures demote mismatching valid snippets") {
  ClusterOptions opts;
  opts.signature = cluster::ExpectedSignature{
      "f", {lang::SnipType::Int}, lang::SnipType::Int};
  ClusterSet c = cluster::cluster(
      {{"a", "fn f(x: int) -> int { return x; }"},
       {"b", "fn g(x: int) -> int { return x; }"},        // wrong name
       {"c", "fn f(x: int) -> bool { return x > 0; }"},   // wrong return
       {"d", "fn f(x: int, y: int) -> int { return x; }"}},  // wrong arity
      opts);
  CHECK(cluster_count(c) == 4);
  CHECK(c.invalid_reasons.count("b") == 1);
  CHECK(c.invalid_reasons.count("c") == 1);
  CHECK(c.invalid_reasons.count("d") == 1);
  CHECK(c.pair_log.empty());
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(cluster::cluster({}, ClusterOptions{}), UsageError);
  CHECK_THROWS_AS(cluster::cluster({{"a", "x"}, {"a", "y"}}, ClusterOptions{}),
                  UsageError);
  CHECK_THROWS_AS(cluster::cluster({{"", "x"}}, ClusterOptions{}), UsageError);
}

TEST_CASE("bounds stay within one and the snippet count") {
  std::vector<SourceSnippet> snippets{{"a", read_fixture("even_mod.snip")},
                                      {"b", read_fixture("even_div.snip")},
                                      {"c", read_fixture("even_m1.snip")},
                                      {"d", "fn is_even(x: int) -> bool { return }"}};
  ClusterSet c = cluster::cluster(snippets, ClusterOptions{});
  CHECK(cluster_count(c) >= 1);
  CHECK(cluster_count(c) <= (int)snippets.size());
  CHECK(cluster_count(c) == 3);  // {a,b}, {c}, {d invalid}
}
