#pragma once

#include <string>
#include <variant>
#include <vector>

#include "symclust/lang/ast.hpp"

namespace symclust::interp {

using lang::BigInt;

struct Value {
  std::variant<BigInt, bool, std::vector<BigInt>> v;

  static Value of_int(BigInt i) { return Value{std::move(i)}; }
  static Value of_int(long long i) { return Value{BigInt(i)}; }
  static Value of_bool(bool b) { return Value{b}; }
  static Value of_array(std::vector<BigInt> a) { return Value{std::move(a)}; }

  bool is_int() const { return std::holds_alternative<BigInt>(v); }
  bool is_bool() const { return std::holds_alternative<bool>(v); }
  bool is_array() const { return std::holds_alternative<std::vector<BigInt>>(v); }

  const BigInt& as_int() const { return std::get<BigInt>(v); }
  bool as_bool() const { return std::get<bool>(v); }
  const std::vector<BigInt>& as_array() const { return std::get<std::vector<BigInt>>(v); }
  std::vector<BigInt>& as_array() { return std::get<std::vector<BigInt>>(v); }

  lang::SnipType type() const {
    if (is_int()) return lang::SnipType::Int;
    if (is_bool()) return lang::SnipType::Bool;
    return lang::SnipType::IntArray;
  }

  bool operator==(const Value& o) const { return v == o.v; }

  std::string to_string() const;
};

enum class ErrorKind { IndexOutOfBounds, DivisionByZero };

const char* error_kind_name(ErrorKind k);

struct Outcome {
  enum class Kind { Return, Error, BudgetExceeded };

  Kind kind;
  Value value;      // Return only
  ErrorKind error;  // Error only

  static Outcome ret(Value v) { return {Kind::Return, std::move(v), {}}; }
  static Outcome err(ErrorKind k) { return {Kind::Error, {}, k}; }
  static Outcome budget_exceeded() { return {Kind::BudgetExceeded, {}, {}}; }

  std::string to_string() const;
};

struct TestCase {
  std::vector<Value> inputs;
  Value expected;
};

}  // namespace symclust::interp
