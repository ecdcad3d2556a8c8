#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polysg {

enum class ErrorKind {
  DegenerateInput,
  OutsideCone,
  BudgetExceeded,
  AssumptionViolated,
  UnsupportedCase,
  NotSimplicial,
  NotAGap,
  BadParameter,
  BoxTooSmall,
  ParseError,
};

std::string_view error_name(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers what failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace polysg
