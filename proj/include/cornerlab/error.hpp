#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cornerlab {

enum class ErrorCode {
  InvalidDomain,
  WrongDomain,
  NonInvertible,
  DegenerateInput,
  NotACorner,
  InvalidPattern,
  WrongResidue,
  InfeasibleDomain,
  WrongColorCount,
  NotQuadraticResidue,
  ZeroInput,
  OutOfRange,
  InvalidArgument,
  CorruptCheckpoint,
  FormatError,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cornerlab
