#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace meshsoc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition failure on a caller-supplied argument or configuration.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Violated graph invariant (self-loop, unknown node, dangling edge).
class GraphError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A simulation reached a state its own algorithm forbids. Distinct from
/// input errors so callers can report it separately.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace meshsoc
