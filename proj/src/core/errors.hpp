#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stratacode {

enum class ErrorCode {
  InvalidArgument,
  RingMismatch,
  DimensionMismatch,
  CycleDetected,
  UnknownStratum,
  TransitivityViolation,
  MissingCover,
  ValidationFailed,
  NotAComplex,
  PreconditionFailed,
  TorsionChainModule,
  IncompatibleCocone,
  NotAChainMap,
  EmbeddingNotFull,
  DegeneratePairing,
  SizeExceeded,
  ParseError,
  IoError,
  UnknownExample,
  Internal,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace stratacode
