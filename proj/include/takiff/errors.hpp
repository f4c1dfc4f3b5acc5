#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "takiff/polynomial.hpp"

namespace takiff {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape or ring mismatch: wrong sizes, unknown variables, incompatible rings.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Input that is well shaped but violates a mathematical requirement
// (Jacobi, homomorphism, invariance, singular matrix, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed JSON or scalar text.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A precondition failed on an otherwise well-formed input. Carries the exact
// nonzero residual when one exists.
class RefusalError : public Error {
 public:
  RefusalError(const std::string& what, std::optional<Polynomial> witness = std::nullopt)
      : Error(what), witness_(std::move(witness)) {}

  const std::optional<Polynomial>& witness() const noexcept { return witness_; }

 private:
  std::optional<Polynomial> witness_;
};

// An identity that the theory guarantees was observed false.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace takiff
