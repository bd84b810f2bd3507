#ifndef FPL_ERROR_HPP
#define FPL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fpl {

/// Line/column of a construct in source text, 1-based. Zero means unknown.
struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;

  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(column);
  }
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Truth value outside [0,1] or malformed interval.
class DomainError : public Error {
 public:
  using Error::Error;
};

class RegistrationError : public Error {
 public:
  using Error::Error;
};

// Aggregator failing its boundary or monotonicity check.
class AxiomError : public Error {
 public:
  using Error::Error;
};

class ResolutionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourcePos pos)
      : Error(pos.str() + ": " + message), pos_(pos), message_(message) {}

  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

class ExistenceError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

class TypeError : public Error {
 public:
  using Error::Error;
};

class InstantiationError : public Error {
 public:
  using Error::Error;
};

class GroundingError : public Error {
 public:
  using Error::Error;
};

}  // namespace fpl

#endif  // FPL_ERROR_HPP
