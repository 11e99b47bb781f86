#pragma once

#include <string>

#include "symclust/lang/ast.hpp"

namespace symclust::lang {

// Canonical source form: 4-space indentation, one statement per line,
// parentheses only where precedence requires them. Reparsing the output
// yields a structurally equal program.
std::string pretty_print(const Program& p);

}  // namespace symclust::lang
