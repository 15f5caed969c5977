#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace balcut {

// Precondition on a call argument was violated (bad parameter, mismatched
// universe, s == t, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input lies outside the numeric domain an algorithm supports (e.g. edge
// weights below 1 for weight-class partitioning).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An exhaustive oracle was asked for an instance above its hard size cap.
class BudgetError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace balcut
