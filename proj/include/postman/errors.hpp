#pragma once

#include <stdexcept>
#include <string>

namespace postman {

// Instance-level problems: malformed input, broken invariants, violated
// preconditions. CLI maps these to exit code 1.
class InstanceError : public std::runtime_error {
 public:
  explicit InstanceError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public InstanceError {
 public:
  ParseError(int line, const std::string& msg)
      : InstanceError("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Search-space guards (instance too large for an exhaustive routine).
class SearchLimitError : public InstanceError {
 public:
  explicit SearchLimitError(const std::string& msg) : InstanceError(msg) {}
};

}  // namespace postman
