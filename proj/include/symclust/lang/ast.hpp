#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <string>
#include <vector>

namespace symclust::lang {

// Language integers are arbitrary-width; intermediate values never wrap.
using BigInt = boost::multiprecision::cpp_int;

enum class SnipType { Int, Bool, IntArray };

const char* type_name(SnipType t);

enum class UnOp { Neg, Not };

// Ordered loosest-binding first; precedence climbing in the parser and
// parenthesization in the pretty printer both key off this order.
enum class BinOp { Or, And, Eq, Ne, Lt, Le, Gt, Ge, Add, Sub, Mul, Div, Mod };

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  enum class Kind { IntLit, BoolLit, Var, Index, Len, Sorted, Unary, Binary };

  Kind kind;
  BigInt int_value;         // IntLit
  bool bool_value = false;  // BoolLit
  std::string name;         // Var; Index (array name)
  UnOp un{};
  BinOp bin{};
  ExprPtr lhs;  // Unary operand; Index subscript; Len/Sorted argument; Binary lhs
  ExprPtr rhs;  // Binary rhs
  SnipType type = SnipType::Int;  // annotated by validation
  int line = 0, col = 0;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Stmt {
  enum class Kind { Let, Assign, IndexAssign, If, While, For, Return };

  Kind kind;
  std::string name;  // Let/Assign/IndexAssign target; For loop variable
  ExprPtr index;     // IndexAssign subscript
  ExprPtr value;     // Let/Assign/IndexAssign/Return value; If/While condition; For range lo
  ExprPtr hi;        // For range hi (half-open)
  std::vector<StmtPtr> body;
  std::vector<StmtPtr> else_body;  // If only
  int line = 0, col = 0;
};

struct Param {
  std::string name;
  SnipType type;
};

struct Program {
  std::string name;
  std::vector<Param> params;
  SnipType return_type;
  std::vector<StmtPtr> body;
};

// Programs are immutable after parsing and shared freely across threads.
using ProgramPtr = std::shared_ptr<const Program>;

// Structural equality ignoring source locations.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Stmt& a, const Stmt& b);
bool structurally_equal(const Program& a, const Program& b);

// Signature compatibility: same parameter type sequence and return type.
// Names do not participate.
bool same_signature(const Program& a, const Program& b);

}  // namespace symclust::lang
