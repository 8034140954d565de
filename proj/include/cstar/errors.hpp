#pragma once

#include <stdexcept>
#include <string>

namespace cstar {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live in different algebras, or a composition does not line up.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// An input failed its certificate (non-unitary u, invalid state, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Operation only defined for single-block algebras.
class UnsupportedStructure : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace cstar
