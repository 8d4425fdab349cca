#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace redistrict {

enum class ErrorCode {
  InvalidGroupCount,
  InaccessibleInitial,
  InvalidInstance,
  InvalidAllocation,
  Overflow,
  Parse,
  Io,
  SizeMismatch,
  PreconditionViolated,
  NoPath,
  TooLarge,
  Internal,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace redistrict
