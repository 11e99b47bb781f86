#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "symclust/lang/parse.hpp"
#include "symclust/lang/pretty.hpp"

using namespace symclust;
using lang::parse_text;

namespace {

lang::ProgramPtr must_parse(const std::string& text) {
  lang::ParseResult r = parse_text(text);
  REQUIRE_MESSAGE(r.valid(), r.error);
  return r.program;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("minimal identity program parses") {
  auto p = must_parse("fn f(x: int) -> int { return x; }");
  CHECK(p->name == "f");
  CHECK(p->params.size() == 1);
  CHECK(p->params[0].type == lang::SnipType::Int);
  CHECK(p->return_type == lang::SnipType::Int);
}

TEST_CASE("undeclared identifier is rejected") {
  auto r = parse_text("fn f(x: int) -> int { return y; }");
  CHECK(!r.valid());
  CHECK(r.error.find("undeclared identifier y") != std::string::npos);
  CHECK(r.program == nullptr);
}

TEST_CASE("missing return on a path is rejected") {
  auto r = parse_text("fn f(x: int) -> int { if x > 0 { return 1; } }");
  CHECK(!r.valid());
  CHECK(r.error.find("missing return on some path") != std::string::npos);
}

TEST_CASE("return after an infinite loop satisfies the path check") {
  CHECK(parse_text("fn f(x: int) -> int { while true { } return 0; }").valid());
}

TEST_CASE("if/else on all paths counts as returning") {
  CHECK(parse_text(
            "fn f(x: int) -> int { if x > 0 { return 1; } else { return 0; } }")
            .valid());
}

TEST_CASE("diagnostics carry line and column") {
  auto r = parse_text("fn f(x: int) -> int {\n  return z;\n}");
  CHECK(!r.valid());
  CHECK(r.error.rfind("2:", 0) == 0);
}

TEST_CASE("shadowing is rejected") {
  auto r = parse_text("fn f(x: int) -> int { let x = 1; return x; }");
  CHECK(!r.valid());
  CHECK(r.error.find("shadow") != std::string::npos);

  r = parse_text("fn f(a: [int]) -> int { for a in 0 .. 3 { } return 0; }");
  CHECK(!r.valid());
}

TEST_CASE("sibling blocks may reuse a name") {
  CHECK(parse_text("fn f(x: int) -> int {"
                   " if x > 0 { let t = 1; x = t; }"
                   " if x < 0 { let t = 2; x = t; }"
                   " return x; }")
            .valid());
}

TEST_CASE("type errors are rejected") {
  CHECK(!parse_text("fn f(x: int) -> int { return x < 0; }").valid());
  CHECK(!parse_text("fn f(x: int) -> int { if x { return 1; } return 0; }").valid());
  CHECK(!parse_text("fn f(a: [int]) -> int { return a + 1; }").valid());
  CHECK(!parse_text("fn f(a: [int]) -> bool { return a == a; }").valid());
  CHECK(!parse_text("fn f(x: int) -> int { x = true; return x; }").valid());
  CHECK(!parse_text("fn f(x: bool) -> bool { return -x; }").valid());
  CHECK(!parse_text("fn f(x: int) -> int { return len(x); }").valid());
}

TEST_CASE("syntax errors are rejected with positions") {
  CHECK(!parse_text("fn f(x: int -> int { return x; }").valid());
  CHECK(!parse_text("fn f() -> int { return 1 }").valid());
  CHECK(!parse_text("fn f() -> int { return 1; } fn g() -> int { return 2; }").valid());
  CHECK(!parse_text("fn f() -> float { return 1; }").valid());
  CHECK(!parse_text("").valid());
}

TEST_CASE("comments and whitespace are ignored") {
  auto p = must_parse("fn f(x: int) -> int { // doubles\n  return x + x; // twice\n}");
  CHECK(p->body.size() == 1);
}

TEST_CASE("parse is deterministic") {
  const std::string text = "fn f(x: int) -> int { return x * 2 + 1; }";
  auto a = must_parse(text);
  auto b = must_parse(text);
  CHECK(lang::structurally_equal(*a, *b));
}

TEST_CASE("pretty print round-trips") {
  const char* sources[] = {
      "fn f(x: int) -> int { return x; }",
      "fn f(x: int) -> int { if x > 0 { return 1; } else { if x < 0 { return -1; } "
      "else { return 0; } } }",
      "fn f(a: [int]) -> int { let s = 0; for i in 0 .. len(a) { s = s + a[i]; } "
      "return s; }",
      "fn f(a: [int], k: int) -> bool { let s = sorted(a); let i = 0; while i < "
      "len(s) && s[i] != k { i = i + 1; } return i < len(s); }",
      "fn f(x: int, y: int) -> int { return (x + y) * (x - y) % (y * y + 1); }",
      "fn f(x: int) -> int { return -(x + 1) * 2; }",
      "fn f(p: bool, q: bool) -> bool { return !(p && q) == (!p || !q); }",
      "fn f(a: [int]) -> [int] { a[0] = a[1] + 1; return sorted(a); }",
  };
  for (const char* src : sources) {
    CAPTURE(src);
    auto p = must_parse(src);
    std::string printed = lang::pretty_print(*p);
    CAPTURE(printed);
    auto q = must_parse(printed);
    CHECK(lang::structurally_equal(*p, *q));
    // Printing is canonical: a second round trip is byte-stable.
    CHECK(lang::pretty_print(*q) == printed);
  }
}

TEST_CASE("pretty print round-trips over the bundled corpus") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(SYMCLUST_FIXTURE_DIR) / "corpus";
  size_t count = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".snip") continue;
    auto r = parse_text(read_file(entry.path()));
    if (!r.valid()) continue;  // corpus may carry deliberately broken snippets
    ++count;
    auto again = parse_text(lang::pretty_print(*r.program));
    REQUIRE_MESSAGE(again.valid(), entry.path().string());
    CHECK_MESSAGE(lang::structurally_equal(*r.program, *again.program),
                  entry.path().string());
  }
  CHECK(count >= 20);
}
