#pragma once

#include <stdexcept>
#include <string>

namespace equihom {

enum class ErrorKind {
  Usage,
  Parse,
  NonAssociative,
  NoIdentity,
  NonClosedGenerators,
  InvalidSubgroup,
  NotNormal,
  ObjectMismatch,
  NotAComplex,
  FunctorialityFailure,
  InvalidComplex,
  UnsupportedGroup,
  UnknownExample,
  LengthExceeded,
  NotACocycle,
  DegreeMismatch,
  InvalidDiagonal,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const { return kind_; }
  /// Human-readable witness data (offending indices, vectors, ...), possibly empty.
  const std::string& witness() const { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

}  // namespace equihom
