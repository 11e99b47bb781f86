#include "symclust/interp/interp.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "symclust/errors.hpp"

namespace symclust::interp {

using lang::Expr;
using lang::Program;
using lang::SnipType;
using lang::Stmt;

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::IndexOutOfBounds: return "IndexOutOfBounds";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
  }
  return "?";
}

std::string Value::to_string() const {
  if (is_int()) return as_int().str();
  if (is_bool()) return as_bool() ? "true" : "false";
  std::ostringstream out;
  out << "[";
  const auto& a = as_array();
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) out << ", ";
    out << a[i].str();
  }
  out << "]";
  return out.str();
}

std::string Outcome::to_string() const {
  switch (kind) {
    case Kind::Return: return value.to_string();
    case Kind::Error: return std::string("error: ") + error_kind_name(error);
    case Kind::BudgetExceeded: return "budget exceeded";
  }
  return "?";
}

namespace {

struct EvalError {
  ErrorKind kind;
};
struct BudgetExhausted {};

class Evaluator {
 public:
  Evaluator(const Program& p, long long budget) : prog_(p), remaining_(budget) {}

  Value run(const std::vector<Value>& inputs) {
    for (size_t i = 0; i < inputs.size(); ++i)
      env_[prog_.params[i].name] = inputs[i];
    std::optional<Value> ret = exec_block(prog_.body);
    if (!ret) throw UsageError("control fell off the end of a validated program");
    return *std::move(ret);
  }

 private:
  const Program& prog_;
  long long remaining_;
  std::unordered_map<std::string, Value> env_;

  void charge() {
    if (--remaining_ < 0) throw BudgetExhausted{};
  }

  std::optional<Value> exec_block(const std::vector<lang::StmtPtr>& stmts) {
    for (const auto& s : stmts) {
      std::optional<Value> ret = exec_stmt(*s);
      if (ret) return ret;
    }
    return std::nullopt;
  }

  std::optional<Value> exec_stmt(const Stmt& s) {
    charge();
    switch (s.kind) {
      case Stmt::Kind::Let:
      case Stmt::Kind::Assign:
        env_[s.name] = eval(*s.value);
        return std::nullopt;
      case Stmt::Kind::IndexAssign: {
        BigInt idx = eval(*s.index).as_int();
        BigInt val = eval(*s.value).as_int();
        auto& arr = env_.at(s.name).as_array();
        if (idx < 0 || idx >= BigInt(arr.size())) throw EvalError{ErrorKind::IndexOutOfBounds};
        arr[static_cast<size_t>(idx)] = std::move(val);
        return std::nullopt;
      }
      case Stmt::Kind::If: {
        if (eval(*s.value).as_bool()) return exec_block(s.body);
        if (!s.else_body.empty()) return exec_block(s.else_body);
        return std::nullopt;
      }
      case Stmt::Kind::While: {
        while (true) {
          charge();
          if (!eval(*s.value).as_bool()) return std::nullopt;
          std::optional<Value> ret = exec_block(s.body);
          if (ret) return ret;
        }
      }
      case Stmt::Kind::For: {
        // Bounds are evaluated once; the visible variable is re-seeded from an
        // internal counter each iteration, so body writes to it do not affect
        // the iteration sequence.
        BigInt lo = eval(*s.value).as_int();
        BigInt hi = eval(*s.hi).as_int();
        for (BigInt i = lo; i < hi; ++i) {
          charge();
          env_[s.name] = Value::of_int(i);
          std::optional<Value> ret = exec_block(s.body);
          if (ret) return ret;
        }
        return std::nullopt;
      }
      case Stmt::Kind::Return:
        return eval(*s.value);
    }
    return std::nullopt;
  }

  Value eval(const Expr& e) {
    charge();
    switch (e.kind) {
      case Expr::Kind::IntLit:
        return Value::of_int(e.int_value);
      case Expr::Kind::BoolLit:
        return Value::of_bool(e.bool_value);
      case Expr::Kind::Var:
        return env_.at(e.name);
      case Expr::Kind::Index: {
        const auto& arr = env_.at(e.name).as_array();
        BigInt idx = eval(*e.lhs).as_int();
        if (idx < 0 || idx >= BigInt(arr.size())) throw EvalError{ErrorKind::IndexOutOfBounds};
        return Value::of_int(arr[static_cast<size_t>(idx)]);
      }
      case Expr::Kind::Len:
        return Value::of_int(BigInt(eval(*e.lhs).as_array().size()));
      case Expr::Kind::Sorted: {
        std::vector<BigInt> a = eval(*e.lhs).as_array();
        std::sort(a.begin(), a.end());
        return Value::of_array(std::move(a));
      }
      case Expr::Kind::Unary: {
        Value operand = eval(*e.lhs);
        if (e.un == lang::UnOp::Neg) return Value::of_int(-operand.as_int());
        return Value::of_bool(!operand.as_bool());
      }
      case Expr::Kind::Binary:
        return eval_binary(e);
    }
    throw UsageError("unreachable expression kind");
  }

  Value eval_binary(const Expr& e) {
    using lang::BinOp;
    // Short-circuit forms first; their right operand must not be evaluated
    // when the left decides the result.
    if (e.bin == BinOp::And) {
      if (!eval(*e.lhs).as_bool()) return Value::of_bool(false);
      return Value::of_bool(eval(*e.rhs).as_bool());
    }
    if (e.bin == BinOp::Or) {
      if (eval(*e.lhs).as_bool()) return Value::of_bool(true);
      return Value::of_bool(eval(*e.rhs).as_bool());
    }
    Value lhs = eval(*e.lhs);
    Value rhs = eval(*e.rhs);
    switch (e.bin) {
      case BinOp::Eq: return Value::of_bool(lhs == rhs);
      case BinOp::Ne: return Value::of_bool(!(lhs == rhs));
      case BinOp::Lt: return Value::of_bool(lhs.as_int() < rhs.as_int());
      case BinOp::Le: return Value::of_bool(lhs.as_int() <= rhs.as_int());
      case BinOp::Gt: return Value::of_bool(lhs.as_int() > rhs.as_int());
      case BinOp::Ge: return Value::of_bool(lhs.as_int() >= rhs.as_int());
      case BinOp::Add: return Value::of_int(lhs.as_int() + rhs.as_int());
      case BinOp::Sub: return Value::of_int(lhs.as_int() - rhs.as_int());
      case BinOp::Mul: return Value::of_int(lhs.as_int() * rhs.as_int());
      case BinOp::Div: {
        if (rhs.as_int() == 0) throw EvalError{ErrorKind::DivisionByZero};
        return Value::of_int(lhs.as_int() / rhs.as_int());  // truncates toward zero
      }
      case BinOp::Mod: {
        if (rhs.as_int() == 0) throw EvalError{ErrorKind::DivisionByZero};
        return Value::of_int(lhs.as_int() % rhs.as_int());  // sign follows dividend
      }
      default:
        throw UsageError("unreachable binary operator");
    }
  }
};

}  // namespace

Outcome evaluate(const Program& p, const std::vector<Value>& inputs,
                 long long step_budget) {
  if (inputs.size() != p.params.size())
    throw UsageError("input arity mismatch: program " + p.name + " takes " +
                     std::to_string(p.params.size()) + " arguments, got " +
                     std::to_string(inputs.size()));
  for (size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].type() != p.params[i].type)
      throw UsageError("input type mismatch for parameter " + p.params[i].name);
  }
  if (step_budget <= 0) throw UsageError("step budget must be positive");
  try {
    return Outcome::ret(Evaluator(p, step_budget).run(inputs));
  } catch (const EvalError& e) {
    return Outcome::err(e.kind);
  } catch (const BudgetExhausted&) {
    return Outcome::budget_exceeded();
  }
}

double correctness_score(const Program& p, const std::vector<TestCase>& tests,
                         long long step_budget) {
  if (tests.empty()) throw UsageError("correctness_score requires at least one test");
  size_t passed = 0;
  for (const TestCase& t : tests) {
    Outcome o = evaluate(p, t.inputs, step_budget);
    if (o.kind == Outcome::Kind::Return && o.value == t.expected) ++passed;
  }
  return static_cast<double>(passed) / static_cast<double>(tests.size());
}

}  // namespace symclust::interp
