#pragma once

#include <cstdint>
#include <vector>

#include "symclust/interp/value.hpp"

namespace symclust::symexec {

using interp::Value;

// Bounded input domain over which programs are compared. Intermediate values
// during execution are unbounded; only the inputs are drawn from here.
struct InputDomain {
  int int_bound = 8;         // scalar int parameters range over [-B, B]
  int max_array_len = 4;     // array lengths range over 0..L
  int array_elem_bound = 4;  // array elements range over [-E, E]
};

// Deterministic enumeration of all concrete inputs for a parameter list.
//
// Value order (defines "lexicographically smallest" for counterexamples):
//   int:    0, 1, -1, 2, -2, ..., B, -B     (magnitude first, positive first)
//   bool:   false, true
//   arrays: shorter first; element tuples in odometer order with the last
//           element varying fastest, each element in the int order above
// Whole input tuples run in odometer order with the last parameter fastest.
class DomainEnumerator {
 public:
  DomainEnumerator(std::vector<lang::SnipType> param_types, const InputDomain& dom);

  // Total input count, saturated at kSizeLimit.
  std::uint64_t size() const { return total_; }
  static constexpr std::uint64_t kSizeLimit = 1'000'000'000'000ULL;

  // Materializes the input tuple at the given rank (0 <= rank < size()).
  std::vector<Value> at(std::uint64_t rank) const;

 private:
  std::vector<lang::SnipType> types_;
  InputDomain dom_;
  std::vector<std::uint64_t> per_param_;  // value count per parameter
  std::uint64_t total_ = 0;
};

// The i-th int in the magnitude ordering 0, 1, -1, 2, -2, ...
lang::BigInt int_value_at(std::uint64_t i);

}  // namespace symclust::symexec
