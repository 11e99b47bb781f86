#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "symclust/lang/ast.hpp"

namespace symclust::lang {

struct Token {
  enum class Kind {
    Ident,
    IntLit,
    KwFn,
    KwLet,
    KwIf,
    KwElse,
    KwWhile,
    KwFor,
    KwIn,
    KwReturn,
    KwTrue,
    KwFalse,
    KwLen,
    KwSorted,
    KwInt,    // "int"
    KwBool,   // "bool"
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Semi,
    Arrow,    // ->
    DotDot,   // ..
    Assign,   // =
    OrOr,
    AndAnd,
    EqEq,
    NotEq,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Bang,
    End,
  };

  Kind kind;
  std::string text;   // Ident spelling / IntLit digits
  int line = 1, col = 1;
};

// Raised with a position-bearing message; parse() converts it into an
// Invalid verdict.
struct LexError {
  std::string message;
  int line, col;
};

// Tokenizes the whole input. "//" comments run to end of line.
std::vector<Token> lex(std::string_view text);

}  // namespace symclust::lang
