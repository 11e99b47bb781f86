#include <string>
#include <unordered_map>
#include <vector>

#include "symclust/lang/ast.hpp"

namespace symclust::lang {

const char* type_name(SnipType t) {
  switch (t) {
    case SnipType::Int: return "int";
    case SnipType::Bool: return "bool";
    case SnipType::IntArray: return "[int]";
  }
  return "?";
}

namespace detail {

namespace {

struct ValidationError {
  std::string message;
  int line, col;
};

[[noreturn]] void fail(const Expr& e, std::string msg) {
  throw ValidationError{std::move(msg), e.line, e.col};
}
[[noreturn]] void fail(const Stmt& s, std::string msg) {
  throw ValidationError{std::move(msg), s.line, s.col};
}

class Validator {
 public:
  explicit Validator(Program& p) : prog_(p) {}

  void run() {
    scopes_.emplace_back();
    for (const Param& param : prog_.params) {
      if (lookup(param.name))
        throw ValidationError{"duplicate parameter " + param.name, 1, 1};
      scopes_.back()[param.name] = param.type;
    }
    bool returns = check_block(prog_.body);
    if (!returns)
      throw ValidationError{"missing return on some path", 1, 1};
  }

 private:
  Program& prog_;
  std::vector<std::unordered_map<std::string, SnipType>> scopes_;

  const SnipType* lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return &found->second;
    }
    return nullptr;
  }

  void declare(const std::string& name, SnipType t, const Stmt& at) {
    if (lookup(name)) fail(at, "redeclaration of " + name + " shadows an existing binding");
    scopes_.back()[name] = t;
  }

  // Returns true iff the block definitely returns on every control path.
  bool check_block(const std::vector<StmtPtr>& stmts) {
    scopes_.emplace_back();
    bool returns = false;
    for (const StmtPtr& s : stmts) returns = check_stmt(*s) || returns;
    scopes_.pop_back();
    return returns;
  }

  bool check_stmt(Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Let: {
        SnipType t = type_of(*s.value);
        declare(s.name, t, s);
        return false;
      }
      case Stmt::Kind::Assign: {
        const SnipType* declared = lookup(s.name);
        if (!declared) fail(s, "undeclared identifier " + s.name);
        SnipType t = type_of(*s.value);
        if (t != *declared)
          fail(s, "cannot assign " + std::string(type_name(t)) + " to " + s.name +
                      " of type " + type_name(*declared));
        return false;
      }
      case Stmt::Kind::IndexAssign: {
        const SnipType* declared = lookup(s.name);
        if (!declared) fail(s, "undeclared identifier " + s.name);
        if (*declared != SnipType::IntArray)
          fail(s, s.name + " is not an array");
        require(*s.index, SnipType::Int, "array subscript");
        require(*s.value, SnipType::Int, "array element");
        return false;
      }
      case Stmt::Kind::If: {
        require(*s.value, SnipType::Bool, "if condition");
        bool then_ret = check_block(s.body);
        bool else_ret = !s.else_body.empty() ? check_block(s.else_body) : false;
        return then_ret && else_ret && !s.else_body.empty();
      }
      case Stmt::Kind::While: {
        require(*s.value, SnipType::Bool, "while condition");
        check_block(s.body);
        return false;  // the loop may run zero times
      }
      case Stmt::Kind::For: {
        require(*s.value, SnipType::Int, "range bound");
        require(*s.hi, SnipType::Int, "range bound");
        scopes_.emplace_back();
        declare(s.name, SnipType::Int, s);
        check_block(s.body);
        scopes_.pop_back();
        return false;
      }
      case Stmt::Kind::Return: {
        SnipType t = type_of(*s.value);
        if (t != prog_.return_type)
          fail(s, std::string("return type mismatch: expected ") +
                      type_name(prog_.return_type) + ", found " + type_name(t));
        return true;
      }
    }
    return false;
  }

  void require(Expr& e, SnipType want, const char* what) {
    SnipType got = type_of(e);
    if (got != want)
      fail(e, std::string(what) + " must be " + type_name(want) + ", found " +
                  type_name(got));
  }

  SnipType type_of(Expr& e) {
    SnipType t = infer(e);
    e.type = t;
    return t;
  }

  SnipType infer(Expr& e) {
    switch (e.kind) {
      case Expr::Kind::IntLit:
        return SnipType::Int;
      case Expr::Kind::BoolLit:
        return SnipType::Bool;
      case Expr::Kind::Var: {
        const SnipType* t = lookup(e.name);
        if (!t) fail(e, "undeclared identifier " + e.name);
        return *t;
      }
      case Expr::Kind::Index: {
        const SnipType* t = lookup(e.name);
        if (!t) fail(e, "undeclared identifier " + e.name);
        if (*t != SnipType::IntArray) fail(e, e.name + " is not an array");
        require(*e.lhs, SnipType::Int, "array subscript");
        return SnipType::Int;
      }
      case Expr::Kind::Len:
        require(*e.lhs, SnipType::IntArray, "len() argument");
        return SnipType::Int;
      case Expr::Kind::Sorted:
        require(*e.lhs, SnipType::IntArray, "sorted() argument");
        return SnipType::IntArray;
      case Expr::Kind::Unary:
        if (e.un == UnOp::Neg) {
          require(*e.lhs, SnipType::Int, "unary '-' operand");
          return SnipType::Int;
        }
        require(*e.lhs, SnipType::Bool, "'!' operand");
        return SnipType::Bool;
      case Expr::Kind::Binary: {
        switch (e.bin) {
          case BinOp::Or:
          case BinOp::And:
            require(*e.lhs, SnipType::Bool, "logical operand");
            require(*e.rhs, SnipType::Bool, "logical operand");
            return SnipType::Bool;
          case BinOp::Eq:
          case BinOp::Ne: {
            SnipType lt = type_of(*e.lhs);
            SnipType rt = type_of(*e.rhs);
            if (lt != rt)
              fail(e, std::string("cannot compare ") + type_name(lt) + " with " +
                          type_name(rt));
            if (lt == SnipType::IntArray) fail(e, "cannot compare arrays");
            return SnipType::Bool;
          }
          case BinOp::Lt:
          case BinOp::Le:
          case BinOp::Gt:
          case BinOp::Ge:
            require(*e.lhs, SnipType::Int, "comparison operand");
            require(*e.rhs, SnipType::Int, "comparison operand");
            return SnipType::Bool;
          default:
            require(*e.lhs, SnipType::Int, "arithmetic operand");
            require(*e.rhs, SnipType::Int, "arithmetic operand");
            return SnipType::Int;
        }
      }
    }
    return SnipType::Int;
  }
};

}  // namespace

std::string validate_program(Program& p) {
  try {
    Validator(p).run();
    return {};
  } catch (const ValidationError& e) {
    return std::to_string(e.line) + ":" + std::to_string(e.col) + ": " + e.message;
  }
}

}  // namespace detail

namespace {

bool expr_eq(const Expr* a, const Expr* b) {
  if (!a || !b) return a == b;
  return structurally_equal(*a, *b);
}

bool block_eq(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!structurally_equal(*a[i], *b[i])) return false;
  return true;
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::IntLit: return a.int_value == b.int_value;
    case Expr::Kind::BoolLit: return a.bool_value == b.bool_value;
    case Expr::Kind::Var: return a.name == b.name;
    case Expr::Kind::Index: return a.name == b.name && expr_eq(a.lhs.get(), b.lhs.get());
    case Expr::Kind::Len:
    case Expr::Kind::Sorted:
      return expr_eq(a.lhs.get(), b.lhs.get());
    case Expr::Kind::Unary:
      return a.un == b.un && expr_eq(a.lhs.get(), b.lhs.get());
    case Expr::Kind::Binary:
      return a.bin == b.bin && expr_eq(a.lhs.get(), b.lhs.get()) &&
             expr_eq(a.rhs.get(), b.rhs.get());
  }
  return false;
}

bool structurally_equal(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.name != b.name) return false;
  return expr_eq(a.index.get(), b.index.get()) &&
         expr_eq(a.value.get(), b.value.get()) && expr_eq(a.hi.get(), b.hi.get()) &&
         block_eq(a.body, b.body) && block_eq(a.else_body, b.else_body);
}

bool structurally_equal(const Program& a, const Program& b) {
  if (a.name != b.name || a.return_type != b.return_type ||
      a.params.size() != b.params.size())
    return false;
  for (size_t i = 0; i < a.params.size(); ++i)
    if (a.params[i].name != b.params[i].name || a.params[i].type != b.params[i].type)
      return false;
  return block_eq(a.body, b.body);
}

bool same_signature(const Program& a, const Program& b) {
  if (a.return_type != b.return_type || a.params.size() != b.params.size())
    return false;
  for (size_t i = 0; i < a.params.size(); ++i)
    if (a.params[i].type != b.params[i].type) return false;
  return true;
}

}  // namespace symclust::lang
