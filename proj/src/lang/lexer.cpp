#include "symclust/lang/lexer.hpp"

#include <cctype>
#include <unordered_map>

namespace symclust::lang {

namespace {

const std::unordered_map<std::string_view, Token::Kind> kKeywords = {
    {"fn", Token::Kind::KwFn},         {"let", Token::Kind::KwLet},
    {"if", Token::Kind::KwIf},         {"else", Token::Kind::KwElse},
    {"while", Token::Kind::KwWhile},   {"for", Token::Kind::KwFor},
    {"in", Token::Kind::KwIn},         {"return", Token::Kind::KwReturn},
    {"true", Token::Kind::KwTrue},     {"false", Token::Kind::KwFalse},
    {"len", Token::Kind::KwLen},       {"sorted", Token::Kind::KwSorted},
    {"int", Token::Kind::KwInt},       {"bool", Token::Kind::KwBool},
};

bool is_ident_start(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum((unsigned char)c) || c == '_'; }

}  // namespace

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;

  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  auto push = [&](Token::Kind k, size_t len, std::string spelled = {}) {
    out.push_back(Token{k, std::move(spelled), line, col});
    advance(len);
  };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace((unsigned char)c)) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
      push(Token::Kind::IntLit, j - i, std::string(text.substr(i, j - i)));
      continue;
    }
    if (is_ident_start(c)) {
      size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      std::string_view word = text.substr(i, j - i);
      auto kw = kKeywords.find(word);
      if (kw != kKeywords.end()) {
        push(kw->second, word.size());
      } else {
        push(Token::Kind::Ident, word.size(), std::string(word));
      }
      continue;
    }

    auto two = [&](char a, char b) {
      return c == a && i + 1 < text.size() && text[i + 1] == b;
    };
    if (two('-', '>')) { push(Token::Kind::Arrow, 2); continue; }
    if (two('.', '.')) { push(Token::Kind::DotDot, 2); continue; }
    if (two('|', '|')) { push(Token::Kind::OrOr, 2); continue; }
    if (two('&', '&')) { push(Token::Kind::AndAnd, 2); continue; }
    if (two('=', '=')) { push(Token::Kind::EqEq, 2); continue; }
    if (two('!', '=')) { push(Token::Kind::NotEq, 2); continue; }
    if (two('<', '=')) { push(Token::Kind::Le, 2); continue; }
    if (two('>', '=')) { push(Token::Kind::Ge, 2); continue; }

    switch (c) {
      case '(': push(Token::Kind::LParen, 1); continue;
      case ')': push(Token::Kind::RParen, 1); continue;
      case '{': push(Token::Kind::LBrace, 1); continue;
      case '}': push(Token::Kind::RBrace, 1); continue;
      case '[': push(Token::Kind::LBracket, 1); continue;
      case ']': push(Token::Kind::RBracket, 1); continue;
      case ',': push(Token::Kind::Comma, 1); continue;
      case ':': push(Token::Kind::Colon, 1); continue;
      case ';': push(Token::Kind::Semi, 1); continue;
      case '=': push(Token::Kind::Assign, 1); continue;
      case '<': push(Token::Kind::Lt, 1); continue;
      case '>': push(Token::Kind::Gt, 1); continue;
      case '+': push(Token::Kind::Plus, 1); continue;
      case '-': push(Token::Kind::Minus, 1); continue;
      case '*': push(Token::Kind::Star, 1); continue;
      case '/': push(Token::Kind::Slash, 1); continue;
      case '%': push(Token::Kind::Percent, 1); continue;
      case '!': push(Token::Kind::Bang, 1); continue;
      default:
        throw LexError{std::string("unexpected character '") + c + "'", line, col};
    }
  }
  out.push_back(Token{Token::Kind::End, {}, line, col});
  return out;
}

}  // namespace symclust::lang
