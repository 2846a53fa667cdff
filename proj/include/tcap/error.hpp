#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tcap {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class TypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A checked precondition of a library operation did not hold on the data
/// (invalid reflector, non-exhaustive assembly, duplicate realizers, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tcap
