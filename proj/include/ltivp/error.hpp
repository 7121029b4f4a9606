#pragma once

#include <stdexcept>
#include <string>

namespace ltivp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (zero polynomial,
/// all-zero numerator coefficients, mismatched stack lengths, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A rational function carries a polynomial part, i.e. its inverse
/// transform contains impulses that a Signal cannot hold.
class NotStrictlyProper : public Error {
 public:
  using Error::Error;
};

/// The observability matrix is singular to working precision, so no unique
/// state matches an output-derivative stack.
class NotObservable : public Error {
 public:
  using Error::Error;
};

/// Malformed problem file. `field` names the offending entry when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(field) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace ltivp
