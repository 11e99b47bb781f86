#include <utility>

#include "symclust/lang/lexer.hpp"
#include "symclust/lang/parse.hpp"

namespace symclust::lang {

namespace detail {
// Implemented in validate.cpp. Annotates expression types in place and
// returns an empty string on success, else a "line:col: reason" diagnostic.
std::string validate_program(Program& p);
}  // namespace detail

namespace {

struct ParseError {
  std::string message;
  int line, col;
};

[[noreturn]] void fail(const Token& at, std::string msg) {
  throw ParseError{std::move(msg), at.line, at.col};
}

const char* token_label(Token::Kind k) {
  using K = Token::Kind;
  switch (k) {
    case K::Ident: return "identifier";
    case K::IntLit: return "integer literal";
    case K::End: return "end of input";
    default: return nullptr;
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program parse_program() {
    Program p;
    expect(Token::Kind::KwFn, "'fn'");
    p.name = expect(Token::Kind::Ident, "function name").text;
    expect(Token::Kind::LParen, "'('");
    if (peek().kind != Token::Kind::RParen) {
      for (;;) {
        Param param;
        param.name = expect(Token::Kind::Ident, "parameter name").text;
        expect(Token::Kind::Colon, "':'");
        param.type = parse_type();
        p.params.push_back(std::move(param));
        if (peek().kind != Token::Kind::Comma) break;
        advance();
      }
    }
    expect(Token::Kind::RParen, "')'");
    expect(Token::Kind::Arrow, "'->'");
    p.return_type = parse_type();
    p.body = parse_block();
    if (peek().kind != Token::Kind::End)
      fail(peek(), "trailing input after function body");
    return p;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;

  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }

  const Token& expect(Token::Kind k, const char* what) {
    if (peek().kind != k) {
      std::string got = peek().text;
      const char* label = token_label(peek().kind);
      std::string desc = label ? label : ("'" + got + "'");
      if (peek().kind == Token::Kind::Ident) desc = "identifier '" + got + "'";
      fail(peek(), std::string("expected ") + what + ", found " + desc);
    }
    return advance();
  }

  SnipType parse_type() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::KwInt:
        advance();
        return SnipType::Int;
      case Token::Kind::KwBool:
        advance();
        return SnipType::Bool;
      case Token::Kind::LBracket: {
        advance();
        expect(Token::Kind::KwInt, "'int'");
        expect(Token::Kind::RBracket, "']'");
        return SnipType::IntArray;
      }
      default:
        fail(t, "expected a type ('int', 'bool' or '[int]')");
    }
  }

  std::vector<StmtPtr> parse_block() {
    expect(Token::Kind::LBrace, "'{'");
    std::vector<StmtPtr> stmts;
    while (peek().kind != Token::Kind::RBrace) {
      if (peek().kind == Token::Kind::End) fail(peek(), "unterminated block");
      stmts.push_back(parse_stmt());
    }
    advance();
    return stmts;
  }

  StmtPtr parse_stmt() {
    const Token& t = peek();
    auto stmt = std::make_unique<Stmt>();
    stmt->line = t.line;
    stmt->col = t.col;
    switch (t.kind) {
      case Token::Kind::KwLet: {
        advance();
        stmt->kind = Stmt::Kind::Let;
        stmt->name = expect(Token::Kind::Ident, "variable name").text;
        expect(Token::Kind::Assign, "'='");
        stmt->value = parse_expr();
        expect(Token::Kind::Semi, "';'");
        return stmt;
      }
      case Token::Kind::KwIf: {
        advance();
        stmt->kind = Stmt::Kind::If;
        stmt->value = parse_expr();
        stmt->body = parse_block();
        if (peek().kind == Token::Kind::KwElse) {
          advance();
          stmt->else_body = parse_block();
        }
        return stmt;
      }
      case Token::Kind::KwWhile: {
        advance();
        stmt->kind = Stmt::Kind::While;
        stmt->value = parse_expr();
        stmt->body = parse_block();
        return stmt;
      }
      case Token::Kind::KwFor: {
        advance();
        stmt->kind = Stmt::Kind::For;
        stmt->name = expect(Token::Kind::Ident, "loop variable").text;
        expect(Token::Kind::KwIn, "'in'");
        stmt->value = parse_expr();
        expect(Token::Kind::DotDot, "'..'");
        stmt->hi = parse_expr();
        stmt->body = parse_block();
        return stmt;
      }
      case Token::Kind::KwReturn: {
        advance();
        stmt->kind = Stmt::Kind::Return;
        stmt->value = parse_expr();
        expect(Token::Kind::Semi, "';'");
        return stmt;
      }
      case Token::Kind::Ident: {
        stmt->name = advance().text;
        if (peek().kind == Token::Kind::LBracket) {
          advance();
          stmt->kind = Stmt::Kind::IndexAssign;
          stmt->index = parse_expr();
          expect(Token::Kind::RBracket, "']'");
        } else {
          stmt->kind = Stmt::Kind::Assign;
        }
        expect(Token::Kind::Assign, "'='");
        stmt->value = parse_expr();
        expect(Token::Kind::Semi, "';'");
        return stmt;
      }
      default:
        fail(t, "expected a statement");
    }
  }

  // Binding strength, loosest first: || < && < comparisons < +- < */% .
  static int binop_level(Token::Kind k) {
    using K = Token::Kind;
    switch (k) {
      case K::OrOr: return 1;
      case K::AndAnd: return 2;
      case K::EqEq: case K::NotEq:
      case K::Lt: case K::Le: case K::Gt: case K::Ge: return 3;
      case K::Plus: case K::Minus: return 4;
      case K::Star: case K::Slash: case K::Percent: return 5;
      default: return 0;
    }
  }

  static BinOp to_binop(Token::Kind k) {
    using K = Token::Kind;
    switch (k) {
      case K::OrOr: return BinOp::Or;
      case K::AndAnd: return BinOp::And;
      case K::EqEq: return BinOp::Eq;
      case K::NotEq: return BinOp::Ne;
      case K::Lt: return BinOp::Lt;
      case K::Le: return BinOp::Le;
      case K::Gt: return BinOp::Gt;
      case K::Ge: return BinOp::Ge;
      case K::Plus: return BinOp::Add;
      case K::Minus: return BinOp::Sub;
      case K::Star: return BinOp::Mul;
      case K::Slash: return BinOp::Div;
      default: return BinOp::Mod;
    }
  }

  ExprPtr parse_expr(int min_level = 1) {
    ExprPtr lhs = parse_unary();
    for (;;) {
      int level = binop_level(peek().kind);
      if (level < min_level || level == 0) return lhs;
      const Token& op = advance();
      ExprPtr rhs = parse_expr(level + 1);  // left-associative
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::Binary;
      e->bin = to_binop(op.kind);
      e->line = op.line;
      e->col = op.col;
      e->lhs = std::move(lhs);
      e->rhs = std::move(rhs);
      lhs = std::move(e);
    }
  }

  ExprPtr parse_unary() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Minus || t.kind == Token::Kind::Bang) {
      advance();
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::Unary;
      e->un = t.kind == Token::Kind::Minus ? UnOp::Neg : UnOp::Not;
      e->line = t.line;
      e->col = t.col;
      e->lhs = parse_unary();
      return e;
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    auto e = std::make_unique<Expr>();
    e->line = t.line;
    e->col = t.col;
    switch (t.kind) {
      case Token::Kind::IntLit: {
        advance();
        e->kind = Expr::Kind::IntLit;
        e->int_value = BigInt(t.text);
        return e;
      }
      case Token::Kind::KwTrue:
      case Token::Kind::KwFalse: {
        advance();
        e->kind = Expr::Kind::BoolLit;
        e->bool_value = t.kind == Token::Kind::KwTrue;
        return e;
      }
      case Token::Kind::KwLen:
      case Token::Kind::KwSorted: {
        advance();
        e->kind = t.kind == Token::Kind::KwLen ? Expr::Kind::Len : Expr::Kind::Sorted;
        expect(Token::Kind::LParen, "'('");
        e->lhs = parse_expr();
        expect(Token::Kind::RParen, "')'");
        return e;
      }
      case Token::Kind::Ident: {
        advance();
        e->name = t.text;
        if (peek().kind == Token::Kind::LBracket) {
          advance();
          e->kind = Expr::Kind::Index;
          e->lhs = parse_expr();
          expect(Token::Kind::RBracket, "']'");
        } else {
          e->kind = Expr::Kind::Var;
        }
        return e;
      }
      case Token::Kind::LParen: {
        advance();
        ExprPtr inner = parse_expr();
        expect(Token::Kind::RParen, "')'");
        return inner;
      }
      default:
        fail(t, "expected an expression");
    }
  }
};

std::string at(int line, int col, const std::string& msg) {
  return std::to_string(line) + ":" + std::to_string(col) + ": " + msg;
}

}  // namespace

ParseResult parse_text(std::string_view text) {
  try {
    Parser parser(lex(text));
    auto program = std::make_shared<Program>(parser.parse_program());
    std::string err = detail::validate_program(*program);
    if (!err.empty()) return {nullptr, std::move(err)};
    return {std::move(program), {}};
  } catch (const LexError& e) {
    return {nullptr, at(e.line, e.col, e.message)};
  } catch (const ParseError& e) {
    return {nullptr, at(e.line, e.col, e.message)};
  }
}

ParseResult parse(const SourceSnippet& snippet) { return parse_text(snippet.text); }

}  // namespace symclust::lang
