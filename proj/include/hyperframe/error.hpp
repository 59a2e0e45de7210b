#pragma once

#include <stdexcept>
#include <string>

namespace hyperframe {

enum class ErrorKind {
  InvalidInput,
  Syntax,
  UnknownIdentifier,
  NonIntegerExponent,
  Domain,
  FrameDegenerate,
  SurfaceUndefined,
  EvoluteUndefined,
  IntegrationFailure,
  Validation,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Column is 1-based; 0 when the error has no position.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& message, std::size_t column)
      : Error(kind, message + " at column " + std::to_string(column)), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

class DomainError : public Error {
 public:
  DomainError(const std::string& reason, const std::string& subexpression)
      : Error(ErrorKind::Domain, reason + " in " + subexpression),
        subexpression_(subexpression) {}
  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

class ValidationError : public Error {
 public:
  ValidationError(const std::string& field, const std::string& message)
      : Error(ErrorKind::Validation, field + ": " + message), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace hyperframe
