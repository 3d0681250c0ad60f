#pragma once

#include <stdexcept>
#include <string>

namespace icat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ambient and structural errors.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};
class MalformedData : public Error {
 public:
  using Error::Error;
};
class EndpointMismatch : public Error {
 public:
  using Error::Error;
};
class BoundExceeded : public Error {
 public:
  using Error::Error;
};
class MalformedFamily : public Error {
 public:
  using Error::Error;
};
class FamilyNotProductClosed : public Error {
 public:
  using Error::Error;
};
class IncoherentFiberData : public Error {
 public:
  using Error::Error;
};
class InvalidMulticatData : public Error {
 public:
  using Error::Error;
};
class NotInvertible : public Error {
 public:
  using Error::Error;
};

// Input errors raised by the spec-file front end.
class InputError : public Error {
 public:
  using Error::Error;
};
class SyntaxError : public InputError {
 public:
  SyntaxError(int line, int col, const std::string& msg)
      : InputError(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};
class UnresolvedReference : public InputError {
 public:
  using InputError::InputError;
};
class SchemaViolation : public InputError {
 public:
  using InputError::InputError;
};
class KindMismatch : public InputError {
 public:
  using InputError::InputError;
};
class TargetNotFound : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace icat
