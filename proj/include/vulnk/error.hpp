#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vulnk {

enum class ErrorCode {
  MalformedLine,
  ProbabilityOutOfRange,
  UnknownLabel,
  DuplicateLabel,
  DuplicateEdge,
  SelfEdge,
  BudgetExceeded,
  InvalidK,
  InvalidArguments,
  InvalidBk,
  MismatchedK,
  InfeasibleShape,
};

std::string_view to_string(ErrorCode code);

// Every library failure is a validation failure of caller-supplied input;
// the CLI maps it to exit code 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vulnk
