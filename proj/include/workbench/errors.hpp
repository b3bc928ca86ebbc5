#pragma once

#include <stdexcept>
#include <string>

namespace workbench {

// Raised when an exhaustive or brute-force operation is asked to run beyond
// its configured desk-scale bound.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a protocol step cannot proceed, e.g. a partial function is
// undefined on a pair it is applied to mid-run.
class ProtocolAbortError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based line where parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace workbench
