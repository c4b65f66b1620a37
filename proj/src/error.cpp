#include "gl/error.hpp"

namespace gl {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::MixedThetaSigns: return "MixedThetaSigns";
    case Errc::NonPositiveExponent: return "NonPositiveExponent";
    case Errc::InfPWithNonPosTheta: return "InfPWithNonPosTheta";
    case Errc::MixedInfiniteP: return "MixedInfiniteP";
    case Errc::MixedInfiniteQ: return "MixedInfiniteQ";
    case Errc::NonFiniteTheta: return "NonFiniteTheta";
    case Errc::ComponentBelowOne: return "ComponentBelowOne";
    case Errc::NegativeValue: return "NegativeValue";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NonMonotone: return "NonMonotone";
    case Errc::NonFiniteIntegrand: return "NonFiniteIntegrand";
    case Errc::Overflow: return "Overflow";
    case Errc::NonFiniteTerm: return "NonFiniteTerm";
    case Errc::EmptySchedule: return "EmptySchedule";
    case Errc::Diverged: return "Diverged";
    case Errc::SearchFailed: return "SearchFailed";
    case Errc::TAtOne: return "TAtOne";
    case Errc::FamilyEmpty: return "FamilyEmpty";
    case Errc::ParameterRelationViolated: return "ParameterRelationViolated";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InvalidAxis: return "InvalidAxis";
    case Errc::Io: return "Io";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace gl
