#pragma once

#include <chrono>
#include <optional>

#include "symclust/symexec/domain.hpp"
#include "symclust/symexec/symexpr.hpp"

namespace symclust::symexec {

// One explored path: a conjunction of boolean constraints over the inputs
// plus the symbolic outcome reached under them. Unknown marks paths cut off
// by the loop-unroll or trace-count cap.
struct Trace {
  enum class Outcome : std::uint8_t { Return, Error, Unknown };

  std::vector<SymExprPtr> constraint;
  Outcome outcome;
  SymExprPtr ret_scalar;                // Return with int/bool result
  std::vector<SymExprPtr> ret_array;    // Return with array result
  bool ret_is_array = false;
};

struct TraceSet {
  std::vector<Trace> traces;
  bool complete = true;  // false iff any path hit a cap
};

constexpr int kDefaultUnrollCap = 32;
constexpr int kDefaultTraceCap = 4096;

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

// Thrown when a deadline passes mid-exploration.
struct EngineTimeout {};

// Explores all paths of `p` over the bounded domain. Array parameter lengths
// are enumerated concretely (0..max_array_len), so loops over them unroll
// exactly; other loops unroll up to `unroll_cap` iterations per loop per
// path, after which the continuing path is recorded as Unknown. Within the
// domain the trace constraints are exhaustive and pairwise disjoint.
TraceSet sym_execute(const lang::Program& p, const InputDomain& dom,
                     int unroll_cap = kDefaultUnrollCap,
                     int trace_cap = kDefaultTraceCap, Deadline deadline = {});

// Evaluates a trace set on one concrete input: index of the satisfied trace
// and its concrete outcome. Exactly one trace is satisfiable per in-domain
// input; returns nullopt only if none matched (an engine defect surfaced by
// the partition property test).
struct TraceMatch {
  int trace_index;
  Trace::Outcome outcome;
  Value value;  // Return outcomes only
};
std::optional<TraceMatch> match_trace(const TraceSet& ts,
                                      const std::vector<Value>& inputs);

// All trace indices whose constraints the input satisfies (test support for
// the disjointness property; production code relies on match_trace).
std::vector<int> satisfied_traces(const TraceSet& ts, const std::vector<Value>& inputs);

}  // namespace symclust::symexec
