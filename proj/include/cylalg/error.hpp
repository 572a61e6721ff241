#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cylalg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Carries the 1-based position of the offending character.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// The caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An exact identity that a witness or certificate claims does not hold.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace cylalg
