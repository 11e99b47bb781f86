#include "symclust/lang/pretty.hpp"

#include <sstream>

namespace symclust::lang {

namespace {

int binop_level(BinOp op) {
  switch (op) {
    case BinOp::Or: return 1;
    case BinOp::And: return 2;
    case BinOp::Eq: case BinOp::Ne:
    case BinOp::Lt: case BinOp::Le: case BinOp::Gt: case BinOp::Ge: return 3;
    case BinOp::Add: case BinOp::Sub: return 4;
    default: return 5;
  }
}

const char* binop_text(BinOp op) {
  switch (op) {
    case BinOp::Or: return "||";
    case BinOp::And: return "&&";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
  }
  return "?";
}

constexpr int kUnaryLevel = 6;

class Printer {
 public:
  std::string print(const Program& p) {
    out_ << "fn " << p.name << "(";
    for (size_t i = 0; i < p.params.size(); ++i) {
      if (i) out_ << ", ";
      out_ << p.params[i].name << ": " << type_name(p.params[i].type);
    }
    out_ << ") -> " << type_name(p.return_type) << " {\n";
    print_block(p.body, 1);
    out_ << "}\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;

  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "    ";
  }

  void print_block(const std::vector<StmtPtr>& stmts, int depth) {
    for (const StmtPtr& s : stmts) print_stmt(*s, depth);
  }

  void print_stmt(const Stmt& s, int depth) {
    indent(depth);
    switch (s.kind) {
      case Stmt::Kind::Let:
        out_ << "let " << s.name << " = ";
        print_expr(*s.value, 1);
        out_ << ";\n";
        break;
      case Stmt::Kind::Assign:
        out_ << s.name << " = ";
        print_expr(*s.value, 1);
        out_ << ";\n";
        break;
      case Stmt::Kind::IndexAssign:
        out_ << s.name << "[";
        print_expr(*s.index, 1);
        out_ << "] = ";
        print_expr(*s.value, 1);
        out_ << ";\n";
        break;
      case Stmt::Kind::If:
        out_ << "if ";
        print_expr(*s.value, 1);
        out_ << " {\n";
        print_block(s.body, depth + 1);
        indent(depth);
        if (!s.else_body.empty()) {
          out_ << "} else {\n";
          print_block(s.else_body, depth + 1);
          indent(depth);
        }
        out_ << "}\n";
        break;
      case Stmt::Kind::While:
        out_ << "while ";
        print_expr(*s.value, 1);
        out_ << " {\n";
        print_block(s.body, depth + 1);
        indent(depth);
        out_ << "}\n";
        break;
      case Stmt::Kind::For:
        out_ << "for " << s.name << " in ";
        print_expr(*s.value, 1);
        out_ << " .. ";
        print_expr(*s.hi, 1);
        out_ << " {\n";
        print_block(s.body, depth + 1);
        indent(depth);
        out_ << "}\n";
        break;
      case Stmt::Kind::Return:
        out_ << "return ";
        print_expr(*s.value, 1);
        out_ << ";\n";
        break;
    }
  }

  // Emits parentheses only when the expression binds looser than its context.
  void print_expr(const Expr& e, int min_level) {
    switch (e.kind) {
      case Expr::Kind::IntLit:
        out_ << e.int_value.str();
        return;
      case Expr::Kind::BoolLit:
        out_ << (e.bool_value ? "true" : "false");
        return;
      case Expr::Kind::Var:
        out_ << e.name;
        return;
      case Expr::Kind::Index:
        out_ << e.name << "[";
        print_expr(*e.lhs, 1);
        out_ << "]";
        return;
      case Expr::Kind::Len:
      case Expr::Kind::Sorted:
        out_ << (e.kind == Expr::Kind::Len ? "len(" : "sorted(");
        print_expr(*e.lhs, 1);
        out_ << ")";
        return;
      case Expr::Kind::Unary: {
        bool parens = kUnaryLevel < min_level;
        if (parens) out_ << "(";
        out_ << (e.un == UnOp::Neg ? "-" : "!");
        print_expr(*e.lhs, kUnaryLevel);
        if (parens) out_ << ")";
        return;
      }
      case Expr::Kind::Binary: {
        int level = binop_level(e.bin);
        bool parens = level < min_level;
        if (parens) out_ << "(";
        print_expr(*e.lhs, level);
        out_ << " " << binop_text(e.bin) << " ";
        print_expr(*e.rhs, level + 1);
        if (parens) out_ << ")";
        return;
      }
    }
  }
};

}  // namespace

std::string pretty_print(const Program& p) { return Printer().print(p); }

}  // namespace symclust::lang
