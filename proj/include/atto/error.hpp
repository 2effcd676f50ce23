#pragma once

#include <stdexcept>
#include <string>

namespace atto {

enum class ErrorCode {
  NonConverged,
  NotPositiveDefinite,
  NotSymmetric,
  Dimension,
  SpaceMismatch,
  DuplicateNodes,
  RepeatedZeros,
  ZeroInnerProduct,
  TripleViolation,
  HypothesisViolation,
  NotUecsm,
  OutOfDisk,
  BadInput,
  Io,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonConverged: return "NON_CONVERGED";
    case ErrorCode::NotPositiveDefinite: return "NOT_PD";
    case ErrorCode::NotSymmetric: return "NOT_SYMMETRIC";
    case ErrorCode::Dimension: return "DIM";
    case ErrorCode::SpaceMismatch: return "SPACE_MISMATCH";
    case ErrorCode::DuplicateNodes: return "DUPLICATE_NODES";
    case ErrorCode::RepeatedZeros: return "REPEATED_ZEROS";
    case ErrorCode::ZeroInnerProduct: return "ZERO_INNER_PRODUCT";
    case ErrorCode::TripleViolation: return "TRIPLE_VIOLATION";
    case ErrorCode::HypothesisViolation: return "HYPOTHESIS_VIOLATION";
    case ErrorCode::NotUecsm: return "NOT_UECSM";
    case ErrorCode::OutOfDisk: return "OUT_OF_DISK";
    case ErrorCode::BadInput: return "BAD_INPUT";
    case ErrorCode::Io: return "IO";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace atto
