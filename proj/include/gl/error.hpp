#pragma once

#include <stdexcept>
#include <string>

namespace gl {

enum class Errc {
  MixedThetaSigns,
  NonPositiveExponent,
  InfPWithNonPosTheta,
  MixedInfiniteP,
  MixedInfiniteQ,
  NonFiniteTheta,
  ComponentBelowOne,
  NegativeValue,
  NonFiniteValue,
  OutOfDomain,
  ShapeMismatch,
  NonMonotone,
  NonFiniteIntegrand,
  Overflow,
  NonFiniteTerm,
  EmptySchedule,
  Diverged,
  SearchFailed,
  TAtOne,
  FamilyEmpty,
  ParameterRelationViolated,
  InvalidArgument,
  InvalidAxis,
  Io,
  Parse,
};

const char* to_string(Errc code) noexcept;

/// Every failure in the library is reported through this type. The code is
/// stable and is what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace gl
