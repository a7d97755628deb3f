#pragma once

#include <stdexcept>
#include <string>

namespace recsel {

// Base class for every error raised by the library. The CLI maps each
// category onto a process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller misuse: wrong family kind, missing table cell, bad configuration.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Input data is invalid: non-finite values, parse failures, empty input.
class DataError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain (x off the support, theta <= 0).
class DomainError : public DataError {
 public:
  using DataError::DataError;
};

// Record values passed out of order (u_prev >= u_curr and similar).
class OrderingError : public DataError {
 public:
  using DataError::DataError;
};

// Numerical failure: quadrature non-convergence, excessive truncation.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace recsel
