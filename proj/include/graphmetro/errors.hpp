#pragma once

#include <stdexcept>
#include <string>

#include "graphmetro/types.hpp"

namespace graphmetro {

/// Process exit codes used by the command-line tool.
enum class ExitCode : int {
  kSuccess = 0,
  kValidation = 2,
  kSingularQfim = 3,
  kIo = 4,
  kOptimizationFailed = 5,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept { return ExitCode::kValidation; }
};

/// Malformed input: bad indices, mismatched dimensions, unknown names.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Input is well formed but outside the operation's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Dense dimension cap exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, int line)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class IoError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kIo; }
};

/// Raised when a Cramér-Rao bound is requested from a non-invertible QFIM.
/// Columns of `null_space()` span the unidentifiable parameter combinations.
class SingularQfimError : public Error {
 public:
  SingularQfimError(int rank, RealMatrix null_space)
      : Error("QFIM is singular (rank " + std::to_string(rank) +
              "); parameters cannot be estimated simultaneously"),
        rank_(rank),
        null_space_(std::move(null_space)) {}
  ExitCode exit_code() const noexcept override { return ExitCode::kSingularQfim; }
  int rank() const noexcept { return rank_; }
  const RealMatrix& null_space() const noexcept { return null_space_; }

 private:
  int rank_;
  RealMatrix null_space_;
};

class DegenerateMeasurementError : public DomainError {
 public:
  using DomainError::DomainError;
};

class OptimizationError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kOptimizationFailed; }
};

}  // namespace graphmetro
