#include "symclust/symexec/equiv.hpp"

#include <map>

#include "symclust/errors.hpp"
#include "symclust/interp/interp.hpp"

namespace symclust::symexec {

using interp::Outcome;
using lang::Program;
using lang::SnipType;

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Equivalent: return "equivalent";
    case Verdict::NotEquivalent: return "not_equivalent";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

std::vector<SnipType> param_types(const Program& p) {
  std::vector<SnipType> out;
  out.reserve(p.params.size());
  for (const auto& param : p.params) out.push_back(param.type);
  return out;
}

// Traces grouped by the concrete lengths of array parameters, recovered from
// the length constraints the engine seeds at the front of each path. Inputs
// then only scan the bucket matching their own array lengths.
class TraceIndex {
 public:
  TraceIndex(const TraceSet& ts, const std::vector<SnipType>& types) {
    for (SnipType t : types)
      if (t == SnipType::IntArray) array_params_.push_back(true);
      else array_params_.push_back(false);
    for (size_t i = 0; i < ts.traces.size(); ++i)
      buckets_[length_key_of(ts.traces[i])].push_back((int)i);
  }

  const std::vector<int>* bucket_for(const std::vector<Value>& inputs) const {
    std::vector<int> key;
    for (size_t i = 0; i < inputs.size(); ++i)
      if (array_params_[i]) key.push_back((int)inputs[i].as_array().size());
    auto it = buckets_.find(key);
    return it == buckets_.end() ? nullptr : &it->second;
  }

 private:
  std::vector<bool> array_params_;
  std::map<std::vector<int>, std::vector<int>> buckets_;

  std::vector<int> length_key_of(const Trace& t) const {
    // Engine seeding puts one `len(param_i) == L` conjunct per array
    // parameter at the front, in parameter order.
    std::vector<int> key;
    for (const auto& c : t.constraint) {
      if (c->kind != SymKind::Binary || c->bin != lang::BinOp::Eq) break;
      if (c->kids[0]->kind != SymKind::InputLen || !c->kids[1]->is_int_lit()) break;
      key.push_back((int)c->kids[1]->int_lit);
    }
    return key;
  }
};

bool trace_satisfied(const Trace& t, const std::vector<Value>& inputs) {
  for (const auto& c : t.constraint)
    if (!eval_sym(*c, inputs).as_bool()) return false;
  return true;
}

struct TimeoutReached {};

void profile_one(BehaviorProfile& prof, const TraceSet& ts, const TraceIndex& index,
                 const DomainEnumerator& dom_enum, Deadline deadline) {
  const std::uint64_t n = dom_enum.size();
  prof.tags.resize(n, BehaviorProfile::Tag::Error);
  prof.values.resize(n);
  for (std::uint64_t r = 0; r < n; ++r) {
    if (deadline && (r & 0xFF) == 0 && std::chrono::steady_clock::now() > *deadline)
      throw TimeoutReached{};
    std::vector<Value> inputs = dom_enum.at(r);
    const std::vector<int>* bucket = index.bucket_for(inputs);
    bool matched = false;
    if (bucket) {
      for (int ti : *bucket) {
        const Trace& t = ts.traces[ti];
        if (!trace_satisfied(t, inputs)) continue;
        matched = true;
        switch (t.outcome) {
          case Trace::Outcome::Return: {
            prof.tags[r] = BehaviorProfile::Tag::Return;
            if (!t.ret_is_array) {
              prof.values[r] = eval_sym(*t.ret_scalar, inputs);
            } else {
              std::vector<lang::BigInt> elems;
              elems.reserve(t.ret_array.size());
              for (const auto& e : t.ret_array)
                elems.push_back(eval_sym(*e, inputs).as_int());
              prof.values[r] = Value::of_array(std::move(elems));
            }
            break;
          }
          case Trace::Outcome::Error:
            prof.tags[r] = BehaviorProfile::Tag::Error;
            break;
          case Trace::Outcome::Unknown:
            prof.tags[r] = BehaviorProfile::Tag::Unknown;
            prof.has_unknown = true;
            break;
        }
        break;
      }
    }
    if (!matched)
      throw std::logic_error("input satisfied no trace: path constraints not exhaustive");
  }
}

// Outcome equality for replay validation: equal Return values match, any two
// Errors match, two BudgetExceeded match (budget exhaustion distinguishes
// only when one-sided).
bool outcomes_match(const Outcome& a, const Outcome& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Outcome::Kind::Return) return a.value == b.value;
  return true;
}

}  // namespace

BehaviorProfile behavior_profile(const Program& p, const EquivConfig& cfg,
                                 Deadline deadline) {
  BehaviorProfile prof;
  DomainEnumerator dom_enum(param_types(p), cfg.domain);
  if (dom_enum.size() > cfg.enum_ceiling) {
    prof.aborted = true;
    prof.abort_reason = "input domain larger than the enumeration ceiling (" +
                        std::to_string(dom_enum.size()) + " > " +
                        std::to_string(cfg.enum_ceiling) + ")";
    return prof;
  }
  try {
    TraceSet ts = sym_execute(p, cfg.domain, cfg.unroll_cap, cfg.trace_cap, deadline);
    TraceIndex index(ts, param_types(p));
    profile_one(prof, ts, index, dom_enum, deadline);
  } catch (const EngineTimeout&) {
    prof.aborted = true;
    prof.abort_reason = "time budget exhausted during symbolic execution";
  } catch (const TimeoutReached&) {
    prof.aborted = true;
    prof.abort_reason = "time budget exhausted during trace evaluation";
  }
  return prof;
}

EquivVerdict compare_profiles(const Program& p, const Program& q,
                              const BehaviorProfile& pp, const BehaviorProfile& pq,
                              const EquivConfig& cfg) {
  if (pp.aborted) return EquivVerdict::inconclusive(pp.abort_reason);
  if (pq.aborted) return EquivVerdict::inconclusive(pq.abort_reason);

  DomainEnumerator dom_enum(param_types(p), cfg.domain);
  bool skipped_unknown = false;
  for (std::uint64_t r = 0; r < pp.tags.size(); ++r) {
    const auto tp = pp.tags[r];
    const auto tq = pq.tags[r];
    if (tp == BehaviorProfile::Tag::Unknown || tq == BehaviorProfile::Tag::Unknown) {
      skipped_unknown = true;
      continue;
    }
    const bool differ =
        tp != tq || (tp == BehaviorProfile::Tag::Return && !(pp.values[r] == pq.values[r]));
    if (!differ) continue;

    std::vector<Value> cx = dom_enum.at(r);
    Outcome op = interp::evaluate(p, cx, cfg.step_budget);
    Outcome oq = interp::evaluate(q, cx, cfg.step_budget);
    if (outcomes_match(op, oq))
      return EquivVerdict::inconclusive(
          "candidate counterexample was not confirmed by concrete replay");
    return EquivVerdict::not_equivalent(std::move(cx));
  }
  if (skipped_unknown)
    return EquivVerdict::inconclusive(
        "exploration bound hit; some inputs could not be compared");
  return EquivVerdict::equivalent();
}

EquivVerdict check_equivalence(const Program& p, const Program& q,
                               const EquivConfig& cfg) {
  if (!lang::same_signature(p, q))
    throw UsageError("cannot compare programs with different signatures");
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::milliseconds(cfg.pair_timeout_ms);
  BehaviorProfile pp = behavior_profile(p, cfg, deadline);
  BehaviorProfile pq = behavior_profile(q, cfg, deadline);
  return compare_profiles(p, q, pp, pq, cfg);
}

EquivVerdict brute_force_equivalence(const Program& p, const Program& q,
                                     const InputDomain& dom, long long step_budget,
                                     std::uint64_t enum_ceiling) {
  if (!lang::same_signature(p, q))
    throw UsageError("cannot compare programs with different signatures");
  DomainEnumerator dom_enum(param_types(p), dom);
  if (dom_enum.size() > enum_ceiling)
    throw UsageError("domain too large to enumerate: " + std::to_string(dom_enum.size()) +
                     " inputs exceed the ceiling of " + std::to_string(enum_ceiling));
  for (std::uint64_t r = 0; r < dom_enum.size(); ++r) {
    std::vector<Value> inputs = dom_enum.at(r);
    Outcome op = interp::evaluate(p, inputs, step_budget);
    Outcome oq = interp::evaluate(q, inputs, step_budget);
    if (!outcomes_match(op, oq)) return EquivVerdict::not_equivalent(std::move(inputs));
  }
  return EquivVerdict::equivalent();
}

}  // namespace symclust::symexec
