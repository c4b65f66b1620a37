#include "gl/params.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "gl/error.hpp"

namespace gl {

bool ParamPair::any_infinite() const { return std::isinf(a) || std::isinf(b); }
bool ParamPair::all_infinite() const { return std::isinf(a) && std::isinf(b); }

Pair2 ParamPair::reciprocal() const {
  return {std::isinf(a) ? 0.0 : 1.0 / a, std::isinf(b) ? 0.0 : 1.0 / b};
}

namespace {

bool positive_extended(double x) { return !std::isnan(x) && x > 0.0; }

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double parse_component(const std::string& s, const std::string& whole) {
  std::string t;
  for (char c : s)
    if (c != ' ') t.push_back(c);
  if (t == "inf" || t == "Inf" || t == "INF" || t == "+inf") return kInf;
  if (t.empty()) fail(Errc::Parse, "empty component in '" + whole + "'");
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end == t.c_str() || *end != '\0') fail(Errc::Parse, "not a number: '" + t + "'");
  return v;
}

std::pair<double, double> parse_two(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
    fail(Errc::Parse, "expected 'x,y', got '" + text + "'");
  return {parse_component(text.substr(0, comma), text),
          parse_component(text.substr(comma + 1), text)};
}

}  // namespace

ParamPair make_param_pair(double a, double b) {
  if (!positive_extended(a) || !positive_extended(b))
    fail(Errc::NonPositiveExponent, "exponent pair (" + fmt(a) + "," + fmt(b) + ") must lie in (0, inf]");
  return {a, b};
}

const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::PosTheta: return "PosTheta";
    case Regime::PosThetaPInf: return "PosThetaPInf";
    case Regime::NegTheta: return "NegTheta";
  }
  return "?";
}

GrandParams validate(GrandParams g) {
  make_param_pair(g.p.a, g.p.b);
  make_param_pair(g.q.a, g.q.b);
  if (!std::isfinite(g.theta.t1) || !std::isfinite(g.theta.t2))
    fail(Errc::NonFiniteTheta, "theta must be finite, got " + to_string(g.theta));
  if (g.q.any_infinite() && !g.q.all_infinite())
    fail(Errc::MixedInfiniteQ, "q = " + to_string(g.q) + " mixes finite and infinite components");

  const bool neg1 = g.theta.t1 < 0, neg2 = g.theta.t2 < 0;
  if (neg1 != neg2)
    fail(Errc::MixedThetaSigns, "theta = " + to_string(g.theta) + " has components of opposite sign");

  if (neg1) {
    if (g.p.any_infinite())
      fail(Errc::InfPWithNonPosTheta, "theta < 0 requires finite p (epsilon range (0, 1/p] is empty)");
    g.regime = Regime::NegTheta;
    return g;
  }
  if (g.p.all_infinite()) {
    if (!(g.theta.t1 > 0 && g.theta.t2 > 0))
      fail(Errc::InfPWithNonPosTheta, "p = (inf, inf) requires theta > 0 componentwise");
    g.regime = Regime::PosThetaPInf;
    return g;
  }
  if (g.p.any_infinite())
    fail(Errc::MixedInfiniteP, "p = " + to_string(g.p) + " mixes finite and infinite components");
  g.regime = Regime::PosTheta;
  return g;
}

ParamPair conjugate(const ParamPair& p) {
  auto one = [](double x) {
    if (std::isnan(x) || x < 1.0) fail(Errc::ComponentBelowOne, "conjugate needs components >= 1, got " + fmt(x));
    if (std::isinf(x)) return 1.0;
    if (x == 1.0) return kInf;
    return x / (x - 1.0);
  };
  return {one(p.a), one(p.b)};
}

std::string to_string(const ParamPair& p) { return "(" + fmt(p.a) + "," + fmt(p.b) + ")"; }
std::string to_string(const ThetaPair& t) { return "(" + fmt(t.t1) + "," + fmt(t.t2) + ")"; }

ParamPair parse_param_pair(const std::string& text) {
  auto [a, b] = parse_two(text);
  return make_param_pair(a, b);
}

ThetaPair parse_theta_pair(const std::string& text) {
  auto [a, b] = parse_two(text);
  if (!std::isfinite(a) || !std::isfinite(b)) fail(Errc::NonFiniteTheta, "theta must be finite: '" + text + "'");
  return {a, b};
}

}  // namespace gl
