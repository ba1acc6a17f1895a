#pragma once

#include <stdexcept>
#include <string>

namespace chiral {

// Base of all library errors. The C API maps each subclass to its own code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

// Structural data rejected by a consistency check (Jacobi, anchor morphism, cocycle).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A computation left the declared weight / poly-degree caps.
class CapOverflow : public Error {
 public:
  using Error::Error;
};

// Objects from different ambient models were combined.
class ModelMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace chiral
