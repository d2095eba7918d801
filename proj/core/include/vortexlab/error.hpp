#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vortexlab {

enum class ErrorCode {
  InvalidInput,
  EvaluationAtSingularity,
  StepUnderflow,
  PoleArgument,
  DomainCut,
  NoConvergence,
  StabilityViolation,
  UnsupportedNegativeCone,
  AllSectionsZero,
  NotRotationallySymmetric,
  NotConverged,
  ConstraintViolation,
  EvaluationAtPuncture,
  WeightOrderViolation,
  SyntaxError,
  DivisionByZeroPolynomial,
  ConstantMap,
  DomainError,
  BradlowViolation,
  HypothesisViolation,
};

/// Stable identifier used in machine-readable error reports.
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vortexlab
