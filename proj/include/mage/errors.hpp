#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mage {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (expressions, config files, reports).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_ = 0;
};

/// A mathematically invalid request: evaluation outside the domain,
/// a degenerate structure, or a violated precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A self-check inside the library failed. Indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace mage
