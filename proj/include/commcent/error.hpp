#pragma once

#include <stdexcept>
#include <string>

namespace commcent {

// Base for every error raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad parameter or API misuse (exit code 1).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data (exit code 2).
class DataError : public Error {
 public:
  using Error::Error;
};

// Divergence or non-convergence of an iterative method (exit code 3).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace commcent
