#pragma once

#include <stdexcept>
#include <string>

namespace bqtru {

enum class ErrorKind {
  ContextMismatch,
  NotAGridPoint,
  NotInvertible,
  EvenModulus,
  NormVanishesOutsideT,
  InvalidWeight,
  InvalidParams,
  NonIntegralU,
  RankDeficient,
  DimensionMismatch,
  NoPointInRadius,
  BudgetExceeded,
  WeightTooLarge,
  RetriesExhausted,
  MessageOutOfRange,
  DecryptionFailure,
  PayloadTooLarge,
  MalformedInput,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bqtru
