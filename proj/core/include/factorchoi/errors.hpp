#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace factorchoi {

enum class ErrorCode {
  DimensionMismatch,
  NotHermitian,
  BadWeights,
  NotTracial,
  RepMismatch,
  NotAProjection,
  ZeroProjection,
  NotRankOneProjection,
  NotSelfAdjoint,
  NotPositive,
  InternalDisagreement,
  UnsupportedDimension,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by Kraus extraction when D is not positive semidefinite; carries the
/// offending minimal eigenvalue.
class NotPositiveError : public Error {
 public:
  NotPositiveError(double min_eigenvalue, const std::string& what);

  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

}  // namespace factorchoi
