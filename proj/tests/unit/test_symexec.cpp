#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "symclust/errors.hpp"
#include "symclust/interp/interp.hpp"
#include "symclust/lang/parse.hpp"
#include "symclust/symexec/equiv.hpp"

using namespace symclust;
using interp::Outcome;
using interp::Value;
using symexec::DomainEnumerator;
using symexec::EquivConfig;
using symexec::EquivVerdict;
using symexec::InputDomain;
using symexec::Trace;
using symexec::TraceSet;
using symexec::Verdict;

namespace {

lang::ProgramPtr prog(const std::string& text) {
  auto r = lang::parse_text(text);
  REQUIRE_MESSAGE(r.valid(), r.error);
  return r.program;
}

// Interpreter outcome and symbolic trace outcome agree on one input.
void check_agreement(const lang::Program& p, const TraceSet& ts,
                     const std::vector<Value>& inputs) {
  auto matches = symexec::satisfied_traces(ts, inputs);
  REQUIRE_MESSAGE(matches.size() == 1, "inputs must satisfy exactly one trace");
  const Trace& t = ts.traces[matches[0]];
  if (t.outcome == Trace::Outcome::Unknown) return;
  Outcome o = interp::evaluate(p, inputs);
  if (t.outcome == Trace::Outcome::Error) {
    CHECK(o.kind == Outcome::Kind::Error);
    return;
  }
  REQUIRE(o.kind == Outcome::Kind::Return);
  auto m = symexec::match_trace(ts, inputs);
  REQUIRE(m.has_value());
  CHECK(m->value == o.value);
}

void check_agreement_everywhere(const std::string& text, const InputDomain& dom) {
  auto p = prog(text);
  TraceSet ts = symexec::sym_execute(*p, dom);
  std::vector<lang::SnipType> types;
  for (const auto& param : p->params) types.push_back(param.type);
  DomainEnumerator dom_enum(types, dom);
  for (std::uint64_t r = 0; r < dom_enum.size(); ++r)
    check_agreement(*p, ts, dom_enum.at(r));
}

}  // namespace

TEST_CASE("domain enumeration order is magnitude-first") {
  DomainEnumerator e({lang::SnipType::Int}, InputDomain{2, 0, 0});
  REQUIRE(e.size() == 5);
  CHECK(e.at(0)[0] == Value::of_int(0));
  CHECK(e.at(1)[0] == Value::of_int(1));
  CHECK(e.at(2)[0] == Value::of_int(-1));
  CHECK(e.at(3)[0] == Value::of_int(2));
  CHECK(e.at(4)[0] == Value::of_int(-2));
}

TEST_CASE("domain enumeration covers arrays by length then contents") {
  InputDomain dom{8, 2, 1};
  DomainEnumerator e({lang::SnipType::IntArray}, dom);
  // lengths 0,1,2 with 3 element values: 1 + 3 + 9 = 13
  REQUIRE(e.size() == 13);
  CHECK(e.at(0)[0].as_array().empty());
  CHECK(e.at(1)[0].as_array().size() == 1);
  CHECK(e.at(4)[0].as_array().size() == 2);
  std::set<std::vector<lang::BigInt>> seen;
  for (std::uint64_t i = 0; i < e.size(); ++i) seen.insert(e.at(i)[0].as_array());
  CHECK(seen.size() == 13);
}

TEST_CASE("straight-line programs produce a single complete trace") {
  auto p = prog("fn f(x: int) -> int { return x + x; }");
  TraceSet ts = symexec::sym_execute(*p, InputDomain{});
  CHECK(ts.complete);
  REQUIRE(ts.traces.size() == 1);
  CHECK(ts.traces[0].constraint.empty());
  CHECK(ts.traces[0].outcome == Trace::Outcome::Return);
}

TEST_CASE("a single branch yields two complete traces") {
  auto p = prog("fn f(x: int) -> int { if x > 0 { return 1; } else { return 0; } }");
  TraceSet ts = symexec::sym_execute(*p, InputDomain{});
  CHECK(ts.complete);
  REQUIRE(ts.traces.size() == 2);
  auto m1 = symexec::match_trace(ts, {Value::of_int(5)});
  REQUIRE(m1.has_value());
  CHECK(m1->value == Value::of_int(1));
  auto m2 = symexec::match_trace(ts, {Value::of_int(-5)});
  REQUIRE(m2.has_value());
  CHECK(m2->value == Value::of_int(0));
}

TEST_CASE("array summation forks once per array length") {
  auto p = prog("fn f(a: [int]) -> int { let s = 0; for i in 0 .. len(a) { "
                "s = s + a[i]; } return s; }");
  InputDomain dom{8, 3, 4};
  TraceSet ts = symexec::sym_execute(*p, dom);
  CHECK(ts.complete);
  REQUIRE(ts.traces.size() == 4);  // one trace per length 0..3

  DomainEnumerator dom_enum({lang::SnipType::IntArray}, dom);
  for (std::uint64_t r = 0; r < dom_enum.size(); ++r) {
    std::vector<Value> in = dom_enum.at(r);
    auto m = symexec::match_trace(ts, in);
    REQUIRE(m.has_value());
    lang::BigInt want = 0;
    for (const auto& v : in[0].as_array()) want += v;
    CHECK(m->value == Value::of_int(want));
  }
}

TEST_CASE("trace constraints partition the domain") {
  const char* sources[] = {
      "fn f(x: int) -> int { if x > 0 { if x > 3 { return 2; } return 1; } return 0; }",
      "fn f(x: int, y: int) -> int { if x % 2 == 0 { return x / 2; } return y; }",
      "fn f(a: [int]) -> int { let c = 0; for i in 0 .. len(a) { if a[i] > 0 { "
      "c = c + 1; } } return c; }",
      "fn f(a: [int], i: int) -> int { if i >= 0 && i < len(a) { return a[i]; } "
      "return -1; }",
      "fn f(x: int) -> int { return 10 / x; }",
  };
  InputDomain dom{4, 2, 2};
  for (const char* src : sources) {
    CAPTURE(src);
    auto p = prog(src);
    TraceSet ts = symexec::sym_execute(*p, dom);
    std::vector<lang::SnipType> types;
    for (const auto& param : p->params) types.push_back(param.type);
    DomainEnumerator dom_enum(types, dom);
    for (std::uint64_t r = 0; r < dom_enum.size(); ++r) {
      auto matches = symexec::satisfied_traces(ts, dom_enum.at(r));
      CHECK_MESSAGE(matches.size() == 1, "rank " << r << " matched "
                                                 << matches.size() << " traces");
    }
  }
}

TEST_CASE("interpreter and symbolic outcomes agree across the domain") {
  InputDomain dom{3, 2, 2};
  check_agreement_everywhere(
      "fn f(x: int) -> int { if x > 0 { return 1; } else { return 0; } }", dom);
  check_agreement_everywhere("fn f(x: int, y: int) -> int { return x * y - x / (y + "
                             "10); }",
                             dom);
  check_agreement_everywhere(
      "fn f(a: [int]) -> int { let s = 0; for i in 0 .. len(a) { s = s + a[i]; } "
      "return s; }",
      dom);
  check_agreement_everywhere(
      "fn f(a: [int]) -> [int] { return sorted(a); }", dom);
  check_agreement_everywhere(
      "fn f(a: [int], i: int) -> int { return a[i]; }", dom);
  check_agreement_everywhere(
      "fn f(a: [int], i: int) -> int { a[i] = 7; return a[0]; }", dom);
  check_agreement_everywhere(
      "fn f(x: int, y: int) -> int { return x / y + x % y; }", dom);
  check_agreement_everywhere(
      "fn f(a: [int], x: int) -> bool { let s = sorted(a); let i = 0; while i < "
      "len(s) && s[i] < x { i = i + 1; } return i < len(s) && s[i] == x; }",
      dom);
}

TEST_CASE("interpreter agreement holds across the bundled corpus") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(SYMCLUST_FIXTURE_DIR) / "corpus";
  const InputDomain dom{3, 2, 2};
  size_t programs = 0, inputs_checked = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".snip") continue;
    std::ifstream in(entry.path());
    std::ostringstream buf;
    buf << in.rdbuf();
    auto parsed = lang::parse_text(buf.str());
    if (!parsed.valid()) continue;
    ++programs;
    const lang::Program& p = *parsed.program;
    TraceSet ts = symexec::sym_execute(p, dom);
    std::vector<lang::SnipType> types;
    for (const auto& param : p.params) types.push_back(param.type);
    DomainEnumerator dom_enum(types, dom);
    for (std::uint64_t r = 0; r < dom_enum.size(); ++r) {
      std::vector<Value> in_vals = dom_enum.at(r);
      auto matches = symexec::satisfied_traces(ts, in_vals);
      REQUIRE_MESSAGE(matches.size() == 1,
                      entry.path().filename().string() << " rank " << r);
      const Trace& t = ts.traces[matches[0]];
      if (t.outcome == Trace::Outcome::Unknown) continue;
      ++inputs_checked;
      Outcome o = interp::evaluate(p, in_vals);
      if (t.outcome == Trace::Outcome::Error) {
        CHECK(o.kind == Outcome::Kind::Error);
      } else {
        REQUIRE(o.kind == Outcome::Kind::Return);
        auto m = symexec::match_trace(ts, in_vals);
        CHECK(m->value == o.value);
      }
    }
  }
  CHECK(programs >= 40);
  CHECK(inputs_checked > 1000);
}

TEST_CASE("algebraically equal programs are equivalent") {
  EquivConfig cfg;
  auto v = symexec::check_equivalence(*prog("fn f(x: int) -> int { return x + x; }"),
                                      *prog("fn f(x: int) -> int { return 2 * x; }"),
                                      cfg);
  CHECK(v.verdict == Verdict::Equivalent);
}

TEST_CASE("truncating division distinguishes x/2*2 from x") {
  EquivConfig cfg;
  auto p = prog("fn f(x: int) -> int { return x / 2 * 2; }");
  auto q = prog("fn f(x: int) -> int { return x; }");
  auto v = symexec::check_equivalence(*p, *q, cfg);
  REQUIRE(v.verdict == Verdict::NotEquivalent);
  // Smallest odd magnitude in the documented order.
  REQUIRE(v.counterexample.size() == 1);
  CHECK(v.counterexample[0] == Value::of_int(1));
  // The counterexample replays to different outcomes.
  Outcome op = interp::evaluate(*p, v.counterexample);
  Outcome oq = interp::evaluate(*q, v.counterexample);
  CHECK(op.kind == Outcome::Kind::Return);
  CHECK(oq.kind == Outcome::Kind::Return);
  CHECK(!(op.value == oq.value));
}

TEST_CASE("error behavior distinguishes programs") {
  EquivConfig cfg;
  auto guarded = prog("fn f(a: [int], i: int) -> int { if i >= 0 && i < len(a) { "
                      "return a[i]; } return 0; }");
  auto unguarded = prog("fn f(a: [int], i: int) -> int { return a[i]; }");
  auto v = symexec::check_equivalence(*guarded, *unguarded, cfg);
  REQUIRE(v.verdict == Verdict::NotEquivalent);
  Outcome og = interp::evaluate(*guarded, v.counterexample);
  Outcome ou = interp::evaluate(*unguarded, v.counterexample);
  CHECK(og.kind == Outcome::Kind::Return);
  CHECK(ou.kind == Outcome::Kind::Error);
}

TEST_CASE("reflexivity and symmetry") {
  EquivConfig cfg;
  auto p = prog("fn f(a: [int]) -> int { let s = 0; for i in 0 .. len(a) { "
                "s = s + a[i]; } return s; }");
  auto q = prog("fn f(a: [int]) -> int { let s = 0; let i = len(a); while i > 0 { "
                "i = i - 1; s = s + a[i]; } return s; }");
  CHECK(symexec::check_equivalence(*p, *p, cfg).verdict == Verdict::Equivalent);
  auto pq = symexec::check_equivalence(*p, *q, cfg);
  auto qp = symexec::check_equivalence(*q, *p, cfg);
  CHECK(pq.verdict == qp.verdict);
  CHECK(pq.verdict == Verdict::Equivalent);
}

TEST_CASE("brute force oracle on small domains") {
  InputDomain dom4{4, 3, 3};
  auto v = symexec::brute_force_equivalence(
      *prog("fn f(x: int) -> int { return x; }"),
      *prog("fn f(x: int) -> int { return 0 - (0 - x); }"), dom4);
  CHECK(v.verdict == Verdict::Equivalent);

  v = symexec::brute_force_equivalence(
      *prog("fn f(a: [int]) -> int { return len(a); }"),
      *prog("fn f(a: [int]) -> int { return len(sorted(a)); }"), InputDomain{8, 3, 4});
  CHECK(v.verdict == Verdict::Equivalent);

  v = symexec::brute_force_equivalence(*prog("fn f(x: int) -> int { return x / 2 * 2; }"),
                                       *prog("fn f(x: int) -> int { return x; }"),
                                       dom4);
  REQUIRE(v.verdict == Verdict::NotEquivalent);
  CHECK(v.counterexample[0] == Value::of_int(1));
}

TEST_CASE("both sides exceeding the budget does not distinguish") {
  auto p = prog("fn f(x: int) -> int { while true { } return 0; }");
  auto q = prog("fn f(x: int) -> int { while true { } return 1; }");
  auto v = symexec::brute_force_equivalence(*p, *q, InputDomain{2, 0, 0}, 10'000);
  CHECK(v.verdict == Verdict::Equivalent);

  // One-sided divergence distinguishes.
  auto r = prog("fn f(x: int) -> int { return 0; }");
  v = symexec::brute_force_equivalence(*p, *r, InputDomain{2, 0, 0}, 10'000);
  CHECK(v.verdict == Verdict::NotEquivalent);
}

TEST_CASE("unbounded loops yield inconclusive symbolic verdicts") {
  EquivConfig cfg;
  auto p = prog("fn f(x: int) -> int { let i = 0; while i < x { i = i + 1; } "
                "return i; }");
  // With int_bound above the unroll cap some paths stay unknown.
  cfg.domain = InputDomain{8, 0, 0};
  cfg.unroll_cap = 4;
  auto q = prog("fn f(x: int) -> int { if x > 0 { return x; } return 0; }");
  auto v = symexec::check_equivalence(*p, *q, cfg);
  CHECK(v.verdict == Verdict::Inconclusive);
}

TEST_CASE("trace cap truncates exploration but keeps the partition") {
  auto p = prog("fn f(a: [int]) -> int { let c = 0; for i in 0 .. len(a) { "
                "if a[i] > 0 { c = c + 1; } } return c; }");
  InputDomain dom{8, 4, 4};
  TraceSet ts = symexec::sym_execute(*p, dom, 32, 8);
  CHECK(!ts.complete);
  DomainEnumerator dom_enum({lang::SnipType::IntArray}, dom);
  for (std::uint64_t r = 0; r < dom_enum.size(); r += 97) {
    auto matches = symexec::satisfied_traces(ts, dom_enum.at(r));
    CHECK(matches.size() == 1);
  }
}

TEST_CASE("signature mismatches are usage errors") {
  EquivConfig cfg;
  auto p = prog("fn f(x: int) -> int { return x; }");
  auto q = prog("fn f(x: int, y: int) -> int { return x; }");
  auto r = prog("fn f(x: int) -> bool { return x > 0; }");
  CHECK_THROWS_AS(symexec::check_equivalence(*p, *q, cfg), UsageError);
  CHECK_THROWS_AS(symexec::check_equivalence(*p, *r, cfg), UsageError);
  CHECK_THROWS_AS(symexec::brute_force_equivalence(*p, *q, InputDomain{}), UsageError);
}

TEST_CASE("negative domain bounds are rejected") {
  auto p = prog("fn f(x: int) -> int { return x; }");
  CHECK_THROWS_AS(symexec::sym_execute(*p, InputDomain{-1, 4, 4}), UsageError);
  CHECK_THROWS_AS(DomainEnumerator({lang::SnipType::Int}, InputDomain{8, -2, 4}),
                  UsageError);
  CHECK_THROWS_AS(symexec::sym_execute(*p, InputDomain{8, 4, 4}, 0, 100), UsageError);
}

TEST_CASE("enumeration ceiling guards the brute force oracle") {
  auto p = prog("fn f(x: int, y: int, z: int) -> int { return x + y + z; }");
  CHECK_THROWS_AS(
      symexec::brute_force_equivalence(*p, *p, InputDomain{8, 0, 0}, 1'000, 100),
      UsageError);
}

TEST_CASE("tiny time budgets surface as inconclusive") {
  EquivConfig cfg;
  cfg.pair_timeout_ms = 0;
  auto p = prog("fn f(a: [int]) -> bool { let s = sorted(a); let ok = true; for i in "
                "0 .. len(s) { if s[i] != i + 1 { ok = false; } } return ok; }");
  auto v = symexec::check_equivalence(*p, *p, cfg);
  CHECK(v.verdict == Verdict::Inconclusive);
}

TEST_CASE("zero-parameter programs compare on the single empty input") {
  EquivConfig cfg;
  auto p = prog("fn f() -> int { return 2; }");
  auto q = prog("fn f() -> int { return 1 + 1; }");
  auto r = prog("fn f() -> int { return 3; }");
  CHECK(symexec::check_equivalence(*p, *q, cfg).verdict == Verdict::Equivalent);
  auto v = symexec::check_equivalence(*p, *r, cfg);
  REQUIRE(v.verdict == Verdict::NotEquivalent);
  CHECK(v.counterexample.empty());
  CHECK(symexec::brute_force_equivalence(*p, *q, cfg.domain).verdict ==
        Verdict::Equivalent);
}

TEST_CASE("bool parameters participate in the domain") {
  EquivConfig cfg;
  auto p = prog("fn f(p: bool, q: bool) -> bool { return !(p && q); }");
  auto q = prog("fn f(p: bool, q: bool) -> bool { return !p || !q; }");
  CHECK(symexec::check_equivalence(*p, *q, cfg).verdict == Verdict::Equivalent);
  auto r = prog("fn f(p: bool, q: bool) -> bool { return !p && !q; }");
  CHECK(symexec::check_equivalence(*p, *r, cfg).verdict == Verdict::NotEquivalent);
}
