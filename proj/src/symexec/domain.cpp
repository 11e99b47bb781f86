#include "symclust/symexec/domain.hpp"

#include "symclust/errors.hpp"

namespace symclust::symexec {

using lang::BigInt;
using lang::SnipType;

lang::BigInt int_value_at(std::uint64_t i) {
  if (i == 0) return 0;
  std::uint64_t magnitude = (i + 1) / 2;
  bool positive = (i % 2) == 1;
  return positive ? BigInt(magnitude) : -BigInt(magnitude);
}

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > DomainEnumerator::kSizeLimit / b) return DomainEnumerator::kSizeLimit;
  return a * b;
}

std::uint64_t int_count(int bound) { return 2 * (std::uint64_t)bound + 1; }

// Sum over lengths 0..L of (2E+1)^len, saturated.
std::uint64_t array_count(const InputDomain& dom) {
  std::uint64_t per_elem = int_count(dom.array_elem_bound);
  std::uint64_t total = 0, pow = 1;
  for (int len = 0; len <= dom.max_array_len; ++len) {
    total += pow;
    if (total >= DomainEnumerator::kSizeLimit) return DomainEnumerator::kSizeLimit;
    pow = saturating_mul(pow, per_elem);
  }
  return total;
}

Value array_value_at(std::uint64_t rank, const InputDomain& dom) {
  std::uint64_t per_elem = int_count(dom.array_elem_bound);
  std::uint64_t pow = 1;
  for (int len = 0; len <= dom.max_array_len; ++len) {
    if (rank < pow) {
      // Decode rank as a base-(2E+1) numeral; the first element is the most
      // significant digit so the last element varies fastest.
      std::vector<BigInt> elems(len);
      for (int i = len - 1; i >= 0; --i) {
        elems[i] = int_value_at(rank % per_elem);
        rank /= per_elem;
      }
      return Value::of_array(std::move(elems));
    }
    rank -= pow;
    pow = saturating_mul(pow, per_elem);
  }
  throw UsageError("array rank out of range");
}

}  // namespace

DomainEnumerator::DomainEnumerator(std::vector<SnipType> param_types,
                                   const InputDomain& dom)
    : types_(std::move(param_types)), dom_(dom) {
  if (dom.int_bound < 0 || dom.max_array_len < 0 || dom.array_elem_bound < 0)
    throw UsageError("input domain bounds must be nonnegative");
  total_ = 1;
  for (SnipType t : types_) {
    std::uint64_t n = 0;
    switch (t) {
      case SnipType::Int: n = int_count(dom.int_bound); break;
      case SnipType::Bool: n = 2; break;
      case SnipType::IntArray: n = array_count(dom); break;
    }
    per_param_.push_back(n);
    total_ = saturating_mul(total_, n);
  }
}

std::vector<Value> DomainEnumerator::at(std::uint64_t rank) const {
  std::vector<Value> out(types_.size());
  for (size_t i = types_.size(); i-- > 0;) {
    std::uint64_t digit = rank % per_param_[i];
    rank /= per_param_[i];
    switch (types_[i]) {
      case SnipType::Int:
        out[i] = Value::of_int(int_value_at(digit));
        break;
      case SnipType::Bool:
        out[i] = Value::of_bool(digit == 1);
        break;
      case SnipType::IntArray:
        out[i] = array_value_at(digit, dom_);
        break;
    }
  }
  return out;
}

}  // namespace symclust::symexec
