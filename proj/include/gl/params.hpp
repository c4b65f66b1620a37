#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <string>

namespace gl {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A pair of plain reals, one per axis (epsilon values, weight exponents).
using Pair2 = std::array<double, 2>;

/// Two-component exponent vector (p1, p2); each component lies in (0, inf].
struct ParamPair {
  double a = 1.0;
  double b = 1.0;

  double operator[](std::size_t axis) const { return axis == 0 ? a : b; }

  bool any_infinite() const;
  bool all_infinite() const;
  bool all_finite() const { return !any_infinite(); }
  /// Componentwise 1/x with 1/inf = 0.
  Pair2 reciprocal() const;

  friend bool operator==(const ParamPair&, const ParamPair&) = default;
};

/// Throws NonPositiveExponent unless both components are in (0, inf].
ParamPair make_param_pair(double a, double b);

/// Exponents (theta1, theta2); finite, possibly negative.
struct ThetaPair {
  double t1 = 0.0;
  double t2 = 0.0;

  double operator[](std::size_t axis) const { return axis == 0 ? t1 : t2; }

  friend bool operator==(const ThetaPair&, const ThetaPair&) = default;
};

enum class Regime { PosTheta, PosThetaPInf, NegTheta };

const char* to_string(Regime r) noexcept;

/// Full norm descriptor. `regime` is derived by validate(); constructing one
/// by hand leaves it at PosTheta until validated.
struct GrandParams {
  ParamPair p;
  ParamPair q;
  ThetaPair theta;
  Regime regime = Regime::PosTheta;

  /// q = (inf, inf): the weak (sup over t) form.
  bool weak() const { return q.all_infinite(); }

  friend bool operator==(const GrandParams&, const GrandParams&) = default;
};

/// Resolves the regime or throws naming the violated constraint.
/// Idempotent: validate(validate(g)) == validate(g).
GrandParams validate(GrandParams params);

/// Hoelder conjugate per component: 1/p + 1/p' = 1, with 1 <-> inf.
/// Throws ComponentBelowOne for components < 1.
ParamPair conjugate(const ParamPair& p);

std::string to_string(const ParamPair& p);
std::string to_string(const ThetaPair& t);

/// Parses "x,y" (accepts "inf"). Throws Parse.
ParamPair parse_param_pair(const std::string& text);
ThetaPair parse_theta_pair(const std::string& text);

}  // namespace gl
