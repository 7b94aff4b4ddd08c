#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fqlab {

enum class Errc {
  NotPrime,
  DegreeZero,
  FieldTooLarge,
  NoIrreducibleFound,
  DivisionByZero,
  NotProperSubfield,
  ElementOutOfRange,
  ParseError,
  MixedFields,
  ZeroDivisorInRatio,
  ZeroShift,
  SetTooSmall,
  ZeroInDenominatorSet,
  EmptySet,
  EmptyAfterZeroStrip,
  SumBelowK,
  NonPositiveWeight,
  EmptySpectrum,
  DegenerateSlice,
  TraceDegenerate,
  NotSubsets,
  NotApplicable,
  EpsilonOutOfRange,
  ZeroInSet,
  SizeInfeasible,
  NoProperSubfield,
  BudgetExceeded,
  IoFailure,
  InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

/// Domain error raised by every fqlab module. `name()` is the stable
/// identifier printed by the CLI on stderr.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace fqlab
