#pragma once

#include <string>
#include <string_view>

#include "symclust/lang/ast.hpp"

namespace symclust::lang {

struct SourceSnippet {
  std::string id;
  std::string text;
};

// Valid(program) or Invalid(error). The error message always carries a
// line:column prefix.
struct ParseResult {
  ProgramPtr program;  // non-null iff the snippet parsed and validated
  std::string error;   // nonempty iff invalid

  bool valid() const { return program != nullptr; }
};

// Parses and statically validates a snippet. Validation enforces:
//   - every identifier declared before use, no shadowing per scope chain
//   - expressions well-typed (conditions bool, arithmetic int, ...)
//   - every control path returns a value of the declared return type
// Failures of any kind are reported as Invalid, never thrown.
ParseResult parse(const SourceSnippet& snippet);
ParseResult parse_text(std::string_view text);

}  // namespace symclust::lang
