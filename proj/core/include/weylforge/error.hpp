#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace weylforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// The prime divides a denominator, so reduction modulo p is undefined.
class BadPrime : public Error {
 public:
  using Error::Error;
};

/// Operands live in different rings (variable count or coefficient field).
class Mismatch : public Error {
 public:
  using Error::Error;
};

class UndefinedDegree : public Error {
 public:
  UndefinedDegree() : Error("degree of the zero element is undefined") {}
};

class WrongCharacteristic : public Error {
 public:
  using Error::Error;
};

class NotCentral : public Error {
 public:
  using Error::Error;
};

/// Generator images violate the Weyl commutation relations.
class RelationViolation : public Error {
 public:
  using Error::Error;
};

/// An exponent sum exceeded the configured degree cap.
class DegreeLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// A configurable resource budget (S-pairs, intermediate degree, unknowns,
/// basis size) was exceeded. Reported, never silently truncated.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A state that a theorem rules out was reached; indicates an arithmetic bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

class NotInverse : public Error {
 public:
  using Error::Error;
};

class MalformedCertificate : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace weylforge
