#pragma once

#include <stdexcept>
#include <string>

namespace symclust {

// Caller misuse: bad arguments, violated preconditions, unknown metric names.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// A dataset file failed schema validation; the message names the offending
// path into the document.
class LoadError : public std::runtime_error {
 public:
  explicit LoadError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace symclust
