#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cobham {

/// Raised when a fixed point cannot be generated (|τ(start)| < 2).
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a configured budget (prefix cap, exponent search, ...) runs out.
class ResourceLimit : public std::runtime_error {
 public:
  ResourceLimit(const std::string& what, std::size_t budget)
      : std::runtime_error(what + " (budget " + std::to_string(budget) + ")"),
        budget_(budget) {}
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

/// A word is not a concatenation of the return words of a system.
class DecompositionError : public std::runtime_error {
 public:
  DecompositionError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Malformed substitution file.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed file whose content violates a substitution invariant.
class SemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cobham
