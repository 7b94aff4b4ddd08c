#include "fqlab/error.hpp"

namespace fqlab {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::DegreeZero: return "DegreeZero";
    case Errc::FieldTooLarge: return "FieldTooLarge";
    case Errc::NoIrreducibleFound: return "NoIrreducibleFound";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotProperSubfield: return "NotProperSubfield";
    case Errc::ElementOutOfRange: return "ElementOutOfRange";
    case Errc::ParseError: return "ParseError";
    case Errc::MixedFields: return "MixedFields";
    case Errc::ZeroDivisorInRatio: return "ZeroDivisorInRatio";
    case Errc::ZeroShift: return "ZeroShift";
    case Errc::SetTooSmall: return "SetTooSmall";
    case Errc::ZeroInDenominatorSet: return "ZeroInDenominatorSet";
    case Errc::EmptySet: return "EmptySet";
    case Errc::EmptyAfterZeroStrip: return "EmptyAfterZeroStrip";
    case Errc::SumBelowK: return "SumBelowK";
    case Errc::NonPositiveWeight: return "NonPositiveWeight";
    case Errc::EmptySpectrum: return "EmptySpectrum";
    case Errc::DegenerateSlice: return "DegenerateSlice";
    case Errc::TraceDegenerate: return "TraceDegenerate";
    case Errc::NotSubsets: return "NotSubsets";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case Errc::ZeroInSet: return "ZeroInSet";
    case Errc::SizeInfeasible: return "SizeInfeasible";
    case Errc::NoProperSubfield: return "NoProperSubfield";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::IoFailure: return "IoFailure";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace fqlab
