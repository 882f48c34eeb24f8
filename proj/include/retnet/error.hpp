#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace retnet {

enum class ErrorCode {
  kParse,
  kInvalid,
  kNotATree,
  kEmptyUnion,
  kModeMismatch,
  kLeafsetMismatch,
  kBudgetExceeded,
  kInvalidLabelling,
  kSwitchingMismatch,
  kTTooLarge,
  kDomain,
  kUndecided,
};

std::string_view ErrorCodeName(ErrorCode code);

// Domain failure raised by the library. The CLI maps these to exit status 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace retnet
