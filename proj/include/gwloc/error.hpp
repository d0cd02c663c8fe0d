#pragma once

#include <stdexcept>
#include <string>

namespace gwloc {

enum class ErrorCode {
  DivisionByZero,
  InversionUnsupported,
  PoleAtPoint,
  Parse,
  ZeroInput,
  UnstableRange,
  VersionMismatch,
  CorruptEntry,
  Ambiguous,
  NoIntegerDegree,
  DegenerateSubtorus,
  InconsistentChernData,
  Validation,
  SpecializationDisagreement,
  InvalidArgument,
  UnknownBuilder,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gwloc
