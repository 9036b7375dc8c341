#pragma once

#include <stdexcept>
#include <string>

namespace loclang {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed DSL text. Line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, int line, int column);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// A symbol that is absent from a declared signature or from a structure.
class UnknownSymbolError : public Error {
 public:
  using Error::Error;
};

/// The same symbol name used with two kinds or arities.
class ArityConflictError : public Error {
 public:
  using Error::Error;
};

/// A quantifier that is existential after pushing negations inward.
class NotUniversalError : public Error {
 public:
  using Error::Error;
};

/// A word letter that does not belong to the alphabet in use.
class LetterError : public Error {
 public:
  using Error::Error;
};

/// Structure-level violations: bad interpretation, not a linear order, not a
/// letter partition, not a subsignature.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Incompatible alphabets handed to a combinator or search.
class AlphabetMismatchError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace loclang
