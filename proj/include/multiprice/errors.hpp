#pragma once

#include <stdexcept>
#include <string>

namespace multiprice {

// Base of everything the library throws on bad input. The CLI maps
// subclasses of ValidationError to exit code 2 and SolverLimit to 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class InvalidPriceSet : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidRange : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnsupportedFamily : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SolverLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace multiprice
