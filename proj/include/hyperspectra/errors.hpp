#pragma once

#include <stdexcept>
#include <string>

namespace hyperspectra {

// Base of every error the library raises. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration (automorphisms, subsets, extensions) would exceed its vertex cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A node-visit or iteration budget ran out (model checking, game search, sampling).
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Parameters outside the domain where a formula or construction is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid hypergraph, pair, or formula input.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Text that failed to parse; carries a 1-based position when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(line > 0 ? what + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)
                       : what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// A theorem's hypothesis does not hold for the given instance.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperspectra
