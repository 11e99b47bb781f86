#include "symclust/symexec/symexpr.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace symclust::symexec {

using lang::BinOp;
using lang::UnOp;

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_bigint(const BigInt& v) {
  return std::hash<std::string>{}(v.str());
}

SymExprPtr finish(std::shared_ptr<SymExpr> e) {
  std::size_t h = combine(0x51, (std::size_t)e->kind);
  h = combine(h, (std::size_t)e->un);
  h = combine(h, (std::size_t)e->bin);
  h = combine(h, (std::size_t)e->param);
  h = combine(h, (std::size_t)e->index);
  h = combine(h, e->bool_lit ? 7 : 3);
  if (e->kind == SymKind::IntLit) h = combine(h, hash_bigint(e->int_lit));
  for (const auto& k : e->kids) h = combine(h, k->hash);
  e->hash = h;
  return e;
}

std::shared_ptr<SymExpr> node(SymKind kind) {
  auto e = std::make_shared<SymExpr>();
  e->kind = kind;
  return e;
}

}  // namespace

SymExprPtr sym_int(BigInt v) {
  auto e = node(SymKind::IntLit);
  e->int_lit = std::move(v);
  return finish(std::move(e));
}

SymExprPtr sym_bool(bool v) {
  auto e = node(SymKind::BoolLit);
  e->bool_lit = v;
  return finish(std::move(e));
}

SymExprPtr sym_input_int(int param) {
  auto e = node(SymKind::InputInt);
  e->param = param;
  return finish(std::move(e));
}

SymExprPtr sym_input_bool(int param) {
  auto e = node(SymKind::InputBool);
  e->param = param;
  return finish(std::move(e));
}

SymExprPtr sym_input_elem(int param, int index) {
  auto e = node(SymKind::InputElem);
  e->param = param;
  e->index = index;
  return finish(std::move(e));
}

SymExprPtr sym_input_len(int param) {
  auto e = node(SymKind::InputLen);
  e->param = param;
  return finish(std::move(e));
}

SymExprPtr sym_unary(UnOp op, SymExprPtr a) {
  if (op == UnOp::Not) return sym_not(std::move(a));
  if (a->is_int_lit()) return sym_int(-a->int_lit);
  auto e = node(SymKind::Unary);
  e->un = op;
  e->kids.push_back(std::move(a));
  return finish(std::move(e));
}

SymExprPtr sym_not(SymExprPtr a) {
  if (a->is_bool_lit()) return sym_bool(!a->bool_lit);
  if (a->kind == SymKind::Unary && a->un == UnOp::Not) return a->kids[0];
  auto e = node(SymKind::Unary);
  e->un = UnOp::Not;
  e->kids.push_back(std::move(a));
  return finish(std::move(e));
}

SymExprPtr sym_binary(BinOp op, SymExprPtr a, SymExprPtr b) {
  const bool lits_int = a->is_int_lit() && b->is_int_lit();
  const bool lits_bool = a->is_bool_lit() && b->is_bool_lit();
  switch (op) {
    case BinOp::Add: if (lits_int) return sym_int(a->int_lit + b->int_lit); break;
    case BinOp::Sub: if (lits_int) return sym_int(a->int_lit - b->int_lit); break;
    case BinOp::Mul: if (lits_int) return sym_int(a->int_lit * b->int_lit); break;
    case BinOp::Div:
      // Division by a literal zero never reaches construction; the engine
      // emits an error trace instead.
      if (lits_int) return sym_int(a->int_lit / b->int_lit);
      break;
    case BinOp::Mod: if (lits_int) return sym_int(a->int_lit % b->int_lit); break;
    case BinOp::Lt: if (lits_int) return sym_bool(a->int_lit < b->int_lit); break;
    case BinOp::Le: if (lits_int) return sym_bool(a->int_lit <= b->int_lit); break;
    case BinOp::Gt: if (lits_int) return sym_bool(a->int_lit > b->int_lit); break;
    case BinOp::Ge: if (lits_int) return sym_bool(a->int_lit >= b->int_lit); break;
    case BinOp::Eq:
      if (lits_int) return sym_bool(a->int_lit == b->int_lit);
      if (lits_bool) return sym_bool(a->bool_lit == b->bool_lit);
      if (sym_equal(a, b)) return sym_bool(true);
      break;
    case BinOp::Ne:
      if (lits_int) return sym_bool(a->int_lit != b->int_lit);
      if (lits_bool) return sym_bool(a->bool_lit != b->bool_lit);
      if (sym_equal(a, b)) return sym_bool(false);
      break;
    case BinOp::And:
      if (a->is_bool_lit()) return a->bool_lit ? b : sym_bool(false);
      if (b->is_bool_lit()) return b->bool_lit ? a : sym_bool(false);
      break;
    case BinOp::Or:
      if (a->is_bool_lit()) return a->bool_lit ? sym_bool(true) : b;
      if (b->is_bool_lit()) return b->bool_lit ? sym_bool(true) : a;
      break;
  }
  auto e = node(SymKind::Binary);
  e->bin = op;
  e->kids.push_back(std::move(a));
  e->kids.push_back(std::move(b));
  return finish(std::move(e));
}

SymExprPtr sym_ite(SymExprPtr cond, SymExprPtr then_v, SymExprPtr else_v) {
  if (cond->is_bool_lit()) return cond->bool_lit ? then_v : else_v;
  if (sym_equal(then_v, else_v)) return then_v;
  auto e = node(SymKind::Ite);
  e->kids = {std::move(cond), std::move(then_v), std::move(else_v)};
  return finish(std::move(e));
}

SymExprPtr sym_array_read(SymExprPtr subscript, const std::vector<SymExprPtr>& elems) {
  if (subscript->is_int_lit()) {
    // Caller established the bounds before constructing the read.
    return elems.at(static_cast<size_t>(subscript->int_lit));
  }
  auto e = node(SymKind::ArrayRead);
  e->kids.reserve(elems.size() + 1);
  e->kids.push_back(std::move(subscript));
  e->kids.insert(e->kids.end(), elems.begin(), elems.end());
  return finish(std::move(e));
}

SymExprPtr sym_sort_select(int rank, std::vector<SymExprPtr> elems) {
  bool all_lit = std::all_of(elems.begin(), elems.end(),
                             [](const SymExprPtr& e) { return e->is_int_lit(); });
  if (all_lit) {
    std::vector<BigInt> vals;
    vals.reserve(elems.size());
    for (const auto& e : elems) vals.push_back(e->int_lit);
    std::nth_element(vals.begin(), vals.begin() + rank, vals.end());
    return sym_int(vals[rank]);
  }
  auto e = node(SymKind::SortSelect);
  e->index = rank;
  e->kids = std::move(elems);
  return finish(std::move(e));
}

bool sym_equal(const SymExpr& a, const SymExpr& b) {
  if (&a == &b) return true;
  if (a.hash != b.hash || a.kind != b.kind || a.un != b.un || a.bin != b.bin ||
      a.param != b.param || a.index != b.index || a.bool_lit != b.bool_lit ||
      a.kids.size() != b.kids.size())
    return false;
  if (a.kind == SymKind::IntLit && a.int_lit != b.int_lit) return false;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (!sym_equal(a.kids[i], b.kids[i])) return false;
  return true;
}

Value eval_sym(const SymExpr& e, const std::vector<Value>& inputs) {
  switch (e.kind) {
    case SymKind::IntLit: return Value::of_int(e.int_lit);
    case SymKind::BoolLit: return Value::of_bool(e.bool_lit);
    case SymKind::InputInt: return inputs[e.param];
    case SymKind::InputBool: return inputs[e.param];
    case SymKind::InputElem:
      return Value::of_int(inputs[e.param].as_array().at(e.index));
    case SymKind::InputLen:
      return Value::of_int(BigInt(inputs[e.param].as_array().size()));
    case SymKind::Unary: {
      Value v = eval_sym(*e.kids[0], inputs);
      if (e.un == UnOp::Neg) return Value::of_int(-v.as_int());
      return Value::of_bool(!v.as_bool());
    }
    case SymKind::Binary: {
      if (e.bin == BinOp::And) {
        if (!eval_sym(*e.kids[0], inputs).as_bool()) return Value::of_bool(false);
        return eval_sym(*e.kids[1], inputs);
      }
      if (e.bin == BinOp::Or) {
        if (eval_sym(*e.kids[0], inputs).as_bool()) return Value::of_bool(true);
        return eval_sym(*e.kids[1], inputs);
      }
      Value a = eval_sym(*e.kids[0], inputs);
      Value b = eval_sym(*e.kids[1], inputs);
      switch (e.bin) {
        case BinOp::Eq: return Value::of_bool(a == b);
        case BinOp::Ne: return Value::of_bool(!(a == b));
        case BinOp::Lt: return Value::of_bool(a.as_int() < b.as_int());
        case BinOp::Le: return Value::of_bool(a.as_int() <= b.as_int());
        case BinOp::Gt: return Value::of_bool(a.as_int() > b.as_int());
        case BinOp::Ge: return Value::of_bool(a.as_int() >= b.as_int());
        case BinOp::Add: return Value::of_int(a.as_int() + b.as_int());
        case BinOp::Sub: return Value::of_int(a.as_int() - b.as_int());
        case BinOp::Mul: return Value::of_int(a.as_int() * b.as_int());
        case BinOp::Div:
          if (b.as_int() == 0) throw std::logic_error("unguarded symbolic division");
          return Value::of_int(a.as_int() / b.as_int());
        case BinOp::Mod:
          if (b.as_int() == 0) throw std::logic_error("unguarded symbolic modulo");
          return Value::of_int(a.as_int() % b.as_int());
        default:
          throw std::logic_error("unreachable binary op");
      }
    }
    case SymKind::Ite:
      return eval_sym(*e.kids[eval_sym(*e.kids[0], inputs).as_bool() ? 1 : 2], inputs);
    case SymKind::ArrayRead: {
      BigInt idx = eval_sym(*e.kids[0], inputs).as_int();
      if (idx < 0 || idx >= BigInt(e.kids.size() - 1))
        throw std::logic_error("unguarded symbolic array read");
      return eval_sym(*e.kids[1 + static_cast<size_t>(idx)], inputs);
    }
    case SymKind::SortSelect: {
      std::vector<BigInt> vals;
      vals.reserve(e.kids.size());
      for (const auto& k : e.kids) vals.push_back(eval_sym(*k, inputs).as_int());
      std::nth_element(vals.begin(), vals.begin() + e.index, vals.end());
      return Value::of_int(vals[e.index]);
    }
  }
  throw std::logic_error("unreachable symbolic node kind");
}

}  // namespace symclust::symexec
