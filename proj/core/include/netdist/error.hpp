#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace netdist {

enum class ErrorKind {
  kParse,
  kEmptyInput,
  kDegenerateInput,
  kArgument,
  kInsufficientData,
  kInsufficientClassSize,
  kModelFormat,
  kProtocol,
  kIo,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Same kind, message prefixed with `context: `.
  Error with_context(std::string_view context) const {
    return Error(kind_, std::string(context) + ": " + what());
  }

 private:
  ErrorKind kind_;
};

}  // namespace netdist
