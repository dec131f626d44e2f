#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linqubo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

class NotPSD : public Error {
 public:
  using Error::Error;
};

class NotRepresentable : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration refused because the instance is above the size guard.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class DuplicateEntry : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. `line` is 1-based, 0 when unknown; `field` names the
/// offending key path when the error is structural rather than syntactic.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::string field = {})
      : Error(what), line_(line), field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace linqubo
