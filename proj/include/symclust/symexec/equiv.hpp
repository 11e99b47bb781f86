#pragma once

#include <string>

#include "symclust/symexec/engine.hpp"

namespace symclust::symexec {

enum class Verdict { Equivalent, NotEquivalent, Inconclusive };

const char* verdict_name(Verdict v);

// NotEquivalent carries the lexicographically smallest distinguishing input
// (in the DomainEnumerator order), replayed through the interpreter before
// being reported. Inconclusive carries the reason a bound was hit.
struct EquivVerdict {
  Verdict verdict;
  std::vector<Value> counterexample;
  std::string reason;

  static EquivVerdict equivalent() { return {Verdict::Equivalent, {}, {}}; }
  static EquivVerdict not_equivalent(std::vector<Value> cx) {
    return {Verdict::NotEquivalent, std::move(cx), {}};
  }
  static EquivVerdict inconclusive(std::string why) {
    return {Verdict::Inconclusive, {}, std::move(why)};
  }
};

struct EquivConfig {
  InputDomain domain{};
  int unroll_cap = kDefaultUnrollCap;
  int trace_cap = kDefaultTraceCap;
  long long pair_timeout_ms = 10'000;
  long long step_budget = 1'000'000;        // counterexample replay / brute force
  std::uint64_t enum_ceiling = 1'000'000;   // max inputs enumerated per check
};

// Concrete behaviour of one program over the whole enumerated domain, with
// Unknown marking inputs whose path hit an exploration cap. Two programs are
// bounded-equivalent iff their profiles agree everywhere both are known.
struct BehaviorProfile {
  enum class Tag : std::uint8_t { Return, Error, Unknown };

  std::vector<Tag> tags;      // indexed by DomainEnumerator rank
  std::vector<Value> values;  // parallel; meaningful where tag == Return
  bool aborted = false;       // timeout or ceiling; profile unusable
  std::string abort_reason;
  bool has_unknown = false;
};

// Runs bounded symbolic execution and evaluates the trace set over every
// enumerated input. Honors `deadline` if set.
BehaviorProfile behavior_profile(const lang::Program& p, const EquivConfig& cfg,
                                 Deadline deadline = {});

// Verdict from two precomputed profiles. Inputs where either side is Unknown
// are skipped during the counterexample search; if nothing distinguishes the
// programs but such inputs exist, the verdict is Inconclusive.
EquivVerdict compare_profiles(const lang::Program& p, const lang::Program& q,
                              const BehaviorProfile& pp, const BehaviorProfile& pq,
                              const EquivConfig& cfg);

// Bounded equivalence via symbolic execution plus exhaustive enumeration of
// the bounded domain. Deterministic apart from wall-clock budget exhaustion.
EquivVerdict check_equivalence(const lang::Program& p, const lang::Program& q,
                               const EquivConfig& cfg);

// Independent oracle: runs the interpreter on every input in the domain.
// Never Inconclusive. Outcome equality: equal Return values match, any two
// Errors match, and BudgetExceeded distinguishes only when one-sided.
EquivVerdict brute_force_equivalence(const lang::Program& p, const lang::Program& q,
                                     const InputDomain& dom,
                                     long long step_budget = 1'000'000,
                                     std::uint64_t enum_ceiling = 1'000'000);

}  // namespace symclust::symexec
