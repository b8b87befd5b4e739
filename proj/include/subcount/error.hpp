#pragma once

#include <stdexcept>
#include <string>

namespace subcount {

enum class ErrorCode {
  DuplicateSubset,
  NotDownwardClosed,
  EmptyInput,
  NonFiniteFill,
  NonFiniteWeight,
  GroundSetTooLarge,
  InvalidTolerance,
  InvalidSubset,
  InvalidOrdering,
  OutOfRange,
  NotNormalized,
  SizeOutOfRange,
  ManifestMismatch,
  LoadError,
  IoError,
  ValidationFailed,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateSubset: return "DuplicateSubset";
    case ErrorCode::NotDownwardClosed: return "NotDownwardClosed";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonFiniteFill: return "NonFiniteFill";
    case ErrorCode::NonFiniteWeight: return "NonFiniteWeight";
    case ErrorCode::GroundSetTooLarge: return "GroundSetTooLarge";
    case ErrorCode::InvalidTolerance: return "InvalidTolerance";
    case ErrorCode::InvalidSubset: return "InvalidSubset";
    case ErrorCode::InvalidOrdering: return "InvalidOrdering";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::SizeOutOfRange: return "SizeOutOfRange";
    case ErrorCode::ManifestMismatch: return "ManifestMismatch";
    case ErrorCode::LoadError: return "LoadError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace subcount
