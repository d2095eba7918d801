#include "vortexlab/error.hpp"

namespace vortexlab {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::EvaluationAtSingularity: return "EvaluationAtSingularity";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::PoleArgument: return "PoleArgument";
    case ErrorCode::DomainCut: return "DomainCut";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::StabilityViolation: return "StabilityViolation";
    case ErrorCode::UnsupportedNegativeCone: return "UnsupportedNegativeCone";
    case ErrorCode::AllSectionsZero: return "AllSectionsZero";
    case ErrorCode::NotRotationallySymmetric: return "NotRotationallySymmetric";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::EvaluationAtPuncture: return "EvaluationAtPuncture";
    case ErrorCode::WeightOrderViolation: return "WeightOrderViolation";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DivisionByZeroPolynomial: return "DivisionByZeroPolynomial";
    case ErrorCode::ConstantMap: return "ConstantMap";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::BradlowViolation: return "BradlowViolation";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
  }
  return "Unknown";
}

}  // namespace vortexlab
