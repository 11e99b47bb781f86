#pragma once

#include <memory>
#include <vector>

#include "symclust/interp/value.hpp"

namespace symclust::symexec {

using interp::Value;
using lang::BigInt;

// Expression over the symbolic inputs of one program. Nodes are immutable and
// shared; structural hashes are computed at construction. Array-typed values
// never appear as nodes — the engine tracks arrays as vectors of scalar
// expressions — so evaluating a node always yields an int or a bool.
struct SymExpr;
using SymExprPtr = std::shared_ptr<const SymExpr>;

enum class SymKind : std::uint8_t {
  IntLit,
  BoolLit,
  InputInt,    // scalar int parameter
  InputBool,   // scalar bool parameter
  InputElem,   // element `index` of array parameter `param`
  InputLen,    // length of array parameter `param`
  Unary,
  Binary,
  Ite,         // kids: cond, then, else
  ArrayRead,   // kids: subscript, elem_0 ... elem_{n-1}
  SortSelect,  // `index`-th smallest of kids
};

struct SymExpr {
  SymKind kind;
  lang::UnOp un{};
  lang::BinOp bin{};
  BigInt int_lit;
  bool bool_lit = false;
  int param = -1;
  int index = -1;
  std::vector<SymExprPtr> kids;
  std::size_t hash = 0;

  bool is_int_lit() const { return kind == SymKind::IntLit; }
  bool is_bool_lit() const { return kind == SymKind::BoolLit; }
};

// Constructors fold literal operands eagerly so fully concrete control flow
// (e.g. unrolled loops over known array lengths) never forks.
SymExprPtr sym_int(BigInt v);
SymExprPtr sym_bool(bool v);
SymExprPtr sym_input_int(int param);
SymExprPtr sym_input_bool(int param);
SymExprPtr sym_input_elem(int param, int index);
SymExprPtr sym_input_len(int param);
SymExprPtr sym_unary(lang::UnOp op, SymExprPtr a);
SymExprPtr sym_binary(lang::BinOp op, SymExprPtr a, SymExprPtr b);
SymExprPtr sym_not(SymExprPtr a);
SymExprPtr sym_ite(SymExprPtr cond, SymExprPtr then_v, SymExprPtr else_v);
SymExprPtr sym_array_read(SymExprPtr subscript, const std::vector<SymExprPtr>& elems);
SymExprPtr sym_sort_select(int rank, std::vector<SymExprPtr> elems);

bool sym_equal(const SymExpr& a, const SymExpr& b);
inline bool sym_equal(const SymExprPtr& a, const SymExprPtr& b) {
  return a == b || sym_equal(*a, *b);
}

// Concrete evaluation under a full input assignment. Short-circuits && and
// ||; guarded subscripts and divisors are safe exactly when the enclosing
// path constraint holds. An out-of-range access here indicates an engine
// bug and throws std::logic_error.
Value eval_sym(const SymExpr& e, const std::vector<Value>& inputs);

struct SymExprPtrHash {
  std::size_t operator()(const SymExprPtr& p) const { return p->hash; }
};
struct SymExprPtrEq {
  bool operator()(const SymExprPtr& a, const SymExprPtr& b) const {
    return sym_equal(a, b);
  }
};

}  // namespace symclust::symexec
