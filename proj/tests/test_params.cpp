#include <cmath>

#include "doctest.h"
#include "gl/error.hpp"
#include "gl/params.hpp"

using namespace gl;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidArgument;
}

GrandParams gp(ParamPair p, ParamPair q, ThetaPair th) { return GrandParams{p, q, th, Regime::PosTheta}; }

}  // namespace

TEST_CASE("param pairs reject non-positive components") {
  CHECK(make_param_pair(2, kInf).b == kInf);
  CHECK(code_of([] { make_param_pair(0, 1); }) == Errc::NonPositiveExponent);
  CHECK(code_of([] { make_param_pair(1, -2); }) == Errc::NonPositiveExponent);
  CHECK(code_of([] { make_param_pair(std::nan(""), 1); }) == Errc::NonPositiveExponent);
}

TEST_CASE("regime selection") {
  CHECK(validate(gp({2, 3}, {1, 1}, {1, 0.5})).regime == Regime::PosTheta);
  CHECK(validate(gp({2, 3}, {1, 1}, {0, 0})).regime == Regime::PosTheta);
  CHECK(validate(gp({kInf, kInf}, {2, 2}, {1, 1})).regime == Regime::PosThetaPInf);
  CHECK(validate(gp({2, 2}, {2, 2}, {-1, -2})).regime == Regime::NegTheta);
  CHECK(validate(gp({2, 2}, {kInf, kInf}, {1, 1})).weak());
}

TEST_CASE("invalid parameter combinations") {
  CHECK(code_of([] { validate(gp({2, 2}, {1, 1}, {1, -1})); }) == Errc::MixedThetaSigns);
  CHECK(code_of([] { validate(gp({kInf, kInf}, {1, 1}, {-1, -1})); }) == Errc::InfPWithNonPosTheta);
  CHECK(code_of([] { validate(gp({kInf, kInf}, {1, 1}, {0, 0})); }) == Errc::InfPWithNonPosTheta);
  CHECK(code_of([] { validate(gp({kInf, 2}, {1, 1}, {1, 1})); }) == Errc::MixedInfiniteP);
  CHECK(code_of([] { validate(gp({2, 2}, {1, kInf}, {1, 1})); }) == Errc::MixedInfiniteQ);
  CHECK(code_of([] { validate(gp({2, 2}, {1, 1}, {kInf, 1})); }) == Errc::NonFiniteTheta);
}

TEST_CASE("conjugate exponents") {
  auto c = conjugate({2, 4});
  CHECK(c.a == doctest::Approx(2));
  CHECK(c.b == doctest::Approx(4.0 / 3));
  CHECK(conjugate({1, kInf}) == ParamPair{kInf, 1});
  CHECK(code_of([] { conjugate({0.5, 2}); }) == Errc::ComponentBelowOne);
  // Involution.
  for (double x : {1.0, 1.5, 2.0, 7.0, kInf}) {
    auto back = conjugate(conjugate({x, x}));
    if (std::isinf(x))
      CHECK(std::isinf(back.a));
    else
      CHECK(back.a == doctest::Approx(x));
  }
}

TEST_CASE("text parsing") {
  CHECK(parse_param_pair("2, inf") == ParamPair{2, kInf});
  CHECK(parse_theta_pair("-1,0.5").t1 == -1);
  CHECK(code_of([] { parse_param_pair("2"); }) == Errc::Parse);
  CHECK(code_of([] { parse_param_pair("a,2"); }) == Errc::Parse);
  CHECK(code_of([] { parse_theta_pair("inf,1"); }) == Errc::NonFiniteTheta);
}
