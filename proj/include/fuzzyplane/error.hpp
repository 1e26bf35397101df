#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fuzzyplane {

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kDegenerateGeometry,
  kZeroDivisor,
  kNonGraph,
  kEmptyIntersection,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

/// Single exception type for the library; `code()` tells callers (and the
/// CLI exit-code mapping) which class of failure occurred.
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

}  // namespace fuzzyplane
