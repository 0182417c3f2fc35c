#pragma once

#include <stdexcept>
#include <string>

namespace effres {

enum class ErrorCode {
  Disconnected,
  SameVertex,
  NoSuchEdge,
  NonPositiveWeight,
  UnknownVertex,
  SingularBlock,
  Singular,
  NotAWalk,
  NotTerminalFree,
  Budget,
  SharedNonTerminal,
  NoBalancedSeparator,
  TooManyTerminals,
  WeightUnderflow,
  Parse,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

/// Every recoverable failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace effres
