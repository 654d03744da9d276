#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace excon {

enum class ErrorCode {
  InvalidArgument,
  NotPrime,
  DivisionByZero,
  FieldMismatch,
  DimensionMismatch,
  NonAssociative,
  BadUnit,
  NotAMorphism,
  NotClosed,
  UnitMissing,
  InvalidModule,
  InvalidBimodule,
  AlgebraMismatch,
  NotStable,
  CharacteristicTooSmall,
  NotExact,
  InternalInconsistency,
  NotRigid,
  NotInjective,
  DegenerateQuotient,
  IncompatiblePairings,
  NotIdeal,
  NotBimoduleSplitting,
  NeitherSurjective,
  PreconditionFailed,
  Inconclusive,
  SyntaxError,
  DuplicateName,
  UnresolvedReference,
  TypeMismatch,
  NotFiniteDimensional,
  BadRelation,
  OracleMismatch,
  DimensionCap,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `witness` carries basis indices (a
/// violating triple, a failing stage, ...) whose meaning depends on `code`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<std::size_t> witness = {})
      : std::runtime_error(message), code_(code), witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> witness_;
};

}  // namespace excon
