#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flatcusp {

// Every domain failure carries one of these kinds; the CLI prints the name.
enum class ErrorKind {
  ZeroInput,
  BudgetExceeded,
  Degenerate,
  NotSymmetric,
  ZeroEntry,
  NonPositiveScalar,
  RankMismatch,
  WrongSignature,
  NotIsotropic,
  WrongDimension,
  NotIsometry,
  InvalidTarget,
  ClosureBudgetExceeded,
  NotOddPrime,
  GeneratorCountMismatch,
  Singular,
  InvalidRepresentation,
  UnknownRecord,
  BadParameters,
  UnsupportedFamily,
  EmptyList,
  ParseError,
};

std::string_view error_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace flatcusp
