#include <cmath>
#include <random>

#include "doctest.h"
#include "gl/error.hpp"
#include "gl/norm_spec.hpp"
#include "gl/norms.hpp"
#include "oracles.hpp"

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

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

GrandParams gp(ParamPair p, ParamPair q, ThetaPair th) { return validate(GrandParams{p, q, th}); }

Rearrangement2D random_step(std::mt19937_64& rng, int cells) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> e1, e2;
  for (int i = cells - 1; i >= 0; --i) {
    e1.push_back(std::ldexp(1.0, -i));
    e2.push_back(std::ldexp(1.0, -i));
  }
  Matrix v(static_cast<std::size_t>(cells), static_cast<std::size_t>(cells));
  for (int b2 = cells - 1; b2 >= 0; --b2)
    for (int b1 = cells - 1; b1 >= 0; --b1) {
      double lo = 0.0;
      if (b1 + 1 < cells) lo = std::max(lo, v(b2, b1 + 1));
      if (b2 + 1 < cells) lo = std::max(lo, v(b2 + 1, b1));
      v(b2, b1) = lo + u(rng);
    }
  return Rearrangement2D::step(e1, e2, v);
}

}  // namespace

TEST_CASE("lorentz closed forms") {
  const LogGrid g;
  const ParamPair two{2, 2};
  auto c = lorentz_norm(Rearrangement2D::constant(1), two, two, g);
  CHECK(rel(c.value, 1.0) < 1e-6);
  CHECK(c.converged);
  CHECK_FALSE(c.extremal_eps);
  auto ind = lorentz_norm(Rearrangement2D::indicator(0.25, 0.25), two, two, g);
  CHECK(rel(ind.value, 0.25) < 1e-6);
  CHECK(lorentz_norm(Rearrangement2D::constant(0), two, two, g).value == 0.0);

  // Per axis int_0^a t^{q/p - 1} dt = a^{q/p} p/q, then the q2/q1 power.
  const ParamPair p{3, 1.5}, q{2, 4};
  const double a1 = 0.3, a2 = 0.7;
  const double axis1 = std::pow(a1, q.a / p.a) * p.a / q.a;
  const double axis2 = std::pow(a2, q.b / p.b) * p.b / q.b;
  const double expect = std::pow(std::pow(axis1, q.b / q.a) * axis2, 1.0 / q.b);
  CHECK(rel(lorentz_norm(Rearrangement2D::indicator(a1, a2), p, q, g).value, expect) < 1e-6);
}

TEST_CASE("lorentz rejects infinite exponents and flags divergence") {
  const LogGrid g;
  CHECK(code_of([&] { lorentz_norm(Rearrangement2D::constant(1), {kInf, 2}, {2, 2}, g); }) == Errc::InvalidArgument);
  PowerLogParams pl;
  pl.alpha = {0.5, 0.0};
  auto r = lorentz_norm(Rearrangement2D::power_log(pl), {2, 2}, {2, 2}, g);
  CHECK(std::isinf(r.value));
  CHECK_FALSE(r.converged);
}

TEST_CASE("weak lorentz closed forms") {
  const LogGrid g;
  CHECK(rel(weak_lorentz_norm(Rearrangement2D::constant(1), {2, 3}, g).value, 1.0) < 1e-12);
  const double a1 = 0.3, a2 = 0.6;
  auto r = weak_lorentz_norm(Rearrangement2D::indicator(a1, a2), {2, 3}, g);
  CHECK(rel(r.value, std::pow(a1, 0.5) * std::pow(a2, 1.0 / 3)) < 1e-12);
  CHECK(weak_lorentz_norm(Rearrangement2D::constant(0), {2, 2}, g).value == 0.0);
  CHECK(rel(weak_lorentz_norm(Rearrangement2D::constant(2), {kInf, kInf}, g).value, 2.0) < 1e-12);
}

TEST_CASE("grand norm of a constant, sup regime") {
  auto r = grand_norm(Rearrangement2D::constant(1), gp({1, 1}, {1, 1}, {1, 1}), LogGrid{});
  CHECK(std::fabs(r.value - 0.25) < 1e-4);
  REQUIRE(r.extremal_eps);
  CHECK((*r.extremal_eps)[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK((*r.extremal_eps)[1] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.converged);
}

TEST_CASE("grand norm of a constant, inf regime") {
  auto r = grand_norm(Rearrangement2D::constant(1), gp({1, 1}, {1, 1}, {-1, -1}), LogGrid{});
  CHECK(std::fabs(r.value - 16.0) < 1e-3);
  REQUIRE(r.extremal_eps);
  CHECK((*r.extremal_eps)[0] == doctest::Approx(0.5).epsilon(1e-4));
  CHECK((*r.extremal_eps)[1] == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("grand norm closed form against a per-axis scan") {
  // r = 1, p = (2, 4), q = (1, 3), theta = (0.5, 2): per-axis factor e^th ((1/p + e) q)^{-1/q}.
  const ParamPair p{2, 4}, q{1, 3};
  const ThetaPair th{0.5, 2};
  auto axis = [&](double e, double pp, double qq, double t) { return std::pow(e, t) * std::pow((1 / pp + e) * qq, -1 / qq); };
  const double m1 = oracle::dense_max([&](double e) { return axis(e, p.a, q.a, th.t1); }, 1e-6, 1.0);
  const double m2 = oracle::dense_max([&](double e) { return axis(e, p.b, q.b, th.t2); }, 1e-6, 1.0);
  auto r = grand_norm(Rearrangement2D::constant(1), gp(p, q, th), LogGrid{});
  CHECK(rel(r.value, m1 * m2) < 1e-6);
}

TEST_CASE("theta = 0 recovers the lorentz norm") {
  const LogGrid g;
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5; ++i) {
    auto f = random_step(rng, 4);
    const ParamPair p{2, 3}, q{1.5, 2};
    const double l = lorentz_norm(f, p, q, g).value;
    const double n = grand_norm(f, gp(p, q, {0, 0}), g).value;
    CHECK(rel(n, l) < 2 * g.rel_tol);
  }
}

TEST_CASE("box restriction and routing") {
  const LogGrid g;
  auto f = Rearrangement2D::constant(1);
  auto full = grand_norm(f, gp({1, 1}, {1, 1}, {1, 1}), g);
  auto half = grand_norm(f, gp({1, 1}, {1, 1}, {1, 1}), g, {}, Pair2{0.5, 0.5});
  CHECK(half.value <= full.value);
  CHECK(rel(half.value, std::pow(0.5 / 1.5, 2)) < 1e-6);
  CHECK(code_of([&] { grand_norm(f, gp({1, 1}, {1, 1}, {1, 1}), g, {}, Pair2{2.0, 1.0}); }) == Errc::InvalidArgument);
  CHECK(code_of([&] { grand_weak_norm(f, gp({1, 1}, {1, 1}, {1, 1}), g); }) == Errc::InvalidArgument);
  auto weak = grand_norm(f, gp({1, 1}, {kInf, kInf}, {1, 1}), g);
  CHECK(rel(weak.value, 1.0) < 1e-9);
}

TEST_CASE("grand weak norm of an indicator against a dense scan") {
  const LogGrid g;
  for (double a : {std::exp(-1.0), std::exp(-4.0), 0.3}) {
    auto axis = [&](double e) { return e * std::pow(a, 1 + e); };
    const double m = oracle::dense_max(axis, 1e-6, 1.0);
    auto r = grand_weak_norm(Rearrangement2D::indicator(a, a), gp({1, 1}, {kInf, kInf}, {1, 1}), g);
    CHECK(rel(r.value, m * m) < 1e-6);
    REQUIRE(r.extremal_eps);
    const double eopt = optimal_epsilon(1.0, a, 1.0);
    const double spacing = std::log(1e6) / 63;  // coarse step in ln eps
    for (double e : *r.extremal_eps) CHECK(std::fabs(std::log(e / eopt)) <= spacing);
  }
}

TEST_CASE("grand weak inf regime flags a function outside the space") {
  PowerLogParams pl;
  pl.alpha = {0.5, 0.5};
  pl.beta = {1, 1};
  auto r = grand_weak_norm(Rearrangement2D::power_log(pl), gp({2, 2}, {kInf, kInf}, {-1, -1}), LogGrid{});
  CHECK_FALSE(r.converged);
}

TEST_CASE("log weight weak norm") {
  const ThetaPair th{1, 1};
  const ParamPair p{2, 2};
  PowerLogParams pl;
  pl.alpha = {0.5, 0.5};
  pl.beta = {1, 1};
  auto f = Rearrangement2D::power_log(pl);
  const LogGrid g = LogGrid{}.with_t_max(std::exp(-1.0));
  CHECK(rel(log_weight_weak_norm(f, p, th, g, LogWeightVariant::Literal).value, 1.0) < 1e-12);
  // Guarded factor on u >= theta is (theta/u)^theta e^{-theta}; against u^theta it leaves theta^theta e^{-theta}.
  CHECK(rel(log_weight_weak_norm(f, p, th, g, LogWeightVariant::Guarded).value, std::exp(-2.0)) < 1e-12);

  auto one = Rearrangement2D::constant(1);
  CHECK(rel(log_weight_weak_norm(one, {1, 1}, th, LogGrid{}, LogWeightVariant::Guarded).value, 1.0) < 1e-12);
  CHECK(code_of([&] { log_weight_weak_norm(one, {1, 1}, th, LogGrid{}, LogWeightVariant::Literal); }) ==
        Errc::NonFiniteValue);
  CHECK(log_weight_weak_norm(Rearrangement2D::constant(0), p, th, LogGrid{}).value == 0.0);
  CHECK(code_of([&] { log_weight_weak_norm(one, p, {0, 1}, LogGrid{}); }) == Errc::InvalidArgument);
}

TEST_CASE("log weight integral bound against the exponential integral") {
  LogGrid g;
  g.nodes = 8192;
  const double a = std::exp(-2.0);
  auto r = log_weight_integral_bound(Rearrangement2D::indicator(a, a), {1, 1}, {1, 1}, {1, 1},
                                     BoundSide::UpperForPosTheta, g);
  const double e1 = oracle::expint_e1(2.0);
  CHECK(rel(r.value, e1 * e1) < 1e-6);
  CHECK(log_weight_integral_bound(Rearrangement2D::constant(0), {1, 1}, {1, 1}, {1, 1},
                                  BoundSide::LowerForNegTheta, g)
            .value == 0.0);
}

TEST_CASE("log weight integral bound, lower side and divergence at t = 1") {
  const LogGrid g;
  // Lower side on an indicator: int_2^inf u e^{-u} du = 3 e^{-2} per axis.
  const double a = std::exp(-2.0);
  auto lo = log_weight_integral_bound(Rearrangement2D::indicator(a, a), {1, 1}, {1, 1}, {1, 1},
                                      BoundSide::LowerForNegTheta, g);
  CHECK(rel(lo.value, 9 * std::exp(-4.0)) < 1e-6);
  auto up = log_weight_integral_bound(Rearrangement2D::constant(1), {1, 1}, {1, 1}, {1, 1},
                                      BoundSide::UpperForPosTheta, g);
  CHECK(std::isinf(up.value));
  CHECK_FALSE(up.converged);
}

TEST_CASE("optimal epsilon") {
  CHECK(optimal_epsilon(1, std::exp(-4.0)) == doctest::Approx(0.25));
  CHECK(optimal_epsilon(2, std::exp(-2.0)) == doctest::Approx(1.0));
  CHECK(optimal_epsilon(1, std::exp(-0.5)) == doctest::Approx(2.0));
  CHECK(optimal_epsilon(1, std::exp(-0.5), 1.0) == 1.0);
  CHECK(optimal_epsilon(-1, std::exp(-4.0)) == doctest::Approx(0.25));
  CHECK(code_of([] { optimal_epsilon(1, 1.0); }) == Errc::TAtOne);
  CHECK(code_of([] { optimal_epsilon(1, 1.5); }) == Errc::OutOfDomain);
  CHECK(code_of([] { optimal_epsilon(0, 0.5); }) == Errc::InvalidArgument);
}

TEST_CASE("dyadic grand norm of a constant") {
  auto axis = [](double e) { return e / (1 - std::pow(2.0, -(1 + e))); };
  const double m = oracle::dense_max(axis, 1e-6, 1.0);
  auto r = dyadic_grand_norm(Rearrangement2D::constant(1), gp({1, 1}, {1, 1}, {1, 1}), {1, 1}, DyadicTruncation{});
  CHECK(rel(r.value, m * m) < 1e-6);
  CHECK(r.converged);
  CHECK(r.diagnostics.tail < kDyadicTailTol);

  auto neg = dyadic_grand_norm(Rearrangement2D::constant(1), gp({1, 1}, {1, 1}, {-1, -1}), {1, 1}, DyadicTruncation{});
  auto axis_neg = [](double e) { return 1 / (e * (1 - std::pow(2.0, -(1 - e)))); };
  const double mn = oracle::dense_min(axis_neg, 1e-6, 0.999);
  CHECK(rel(neg.value, mn * mn) < 1e-6);
}

TEST_CASE("dyadic grand norm rejects bad input") {
  auto f = Rearrangement2D::constant(1);
  CHECK(code_of([&] { dyadic_grand_norm(f, gp({kInf, kInf}, {1, 1}, {1, 1}), {1, 1}, {}); }) ==
        Errc::InvalidArgument);
  CHECK(code_of([&] { dyadic_grand_norm(f, gp({1, 1}, {1, 1}, {1, 1}), {kInf, 1}, {}); }) == Errc::InvalidArgument);
  CHECK(code_of([&] { dyadic_grand_norm(f, gp({1, 1}, {1, 1}, {1, 1}), {1, 1}, DyadicTruncation{4}); }) ==
        Errc::InvalidArgument);
}

TEST_CASE("one-dimensional grand lebesgue norms") {
  const LogGrid g;
  auto c = grand_lebesgue_1d(Profile1D::constant(1), 2, 1, LebesgueForm::EpsSup, g);
  CHECK(rel(c.value, 1.0) < 1e-6);
  CHECK(grand_lebesgue_1d(Profile1D::constant(0), 2, 1, LebesgueForm::EpsSup, g).value == 0.0);
  CHECK(grand_lebesgue_1d(Profile1D::constant(0), 2, 1, LebesgueForm::LogChar, g).value == 0.0);

  auto closed = [](double e) { return e * std::pow(2 / e, 1 / (2 - e)); };
  const double m = oracle::dense_max(closed, 1e-6, 1.0);
  auto r = grand_lebesgue_1d(Profile1D::power(0.5), 2, 1, LebesgueForm::EpsSup, g);
  CHECK(rel(r.value, m) < 1e-6);
  CHECK(r.converged);

  for (double alpha : {0.0, 0.1, 0.25, 0.4}) {
    const auto f = Profile1D::power(alpha);
    const double eps = grand_lebesgue_1d(f, 2, 1, LebesgueForm::EpsSup, g).value;
    const double lc = grand_lebesgue_1d(f, 2, 1, LebesgueForm::LogChar, g).value;
    CHECK(eps / lc <= 4.0);
    CHECK(lc / eps <= 4.0);
  }
}

TEST_CASE("log characterization against a scan") {
  // f = 1: sup_s (1 - ln s)^{-theta/p} (1 - s)^{1/p}.
  const double p = 3, th = 2;
  auto f = [&](double s) { return std::pow(1 - std::log(s), -th / p) * std::pow(1 - s, 1 / p); };
  const double m = oracle::dense_max(f, 1e-12, 1.0);
  auto r = grand_lebesgue_1d(Profile1D::constant(1), p, th, LebesgueForm::LogChar, LogGrid{});
  CHECK(rel(r.value, m) < 1e-5);
}

TEST_CASE("profile construction") {
  CHECK(code_of([] { Profile1D::power(-0.5); }) == Errc::NonMonotone);
  CHECK(code_of([] { Profile1D::step({0.5, 1.0}, {1.0, 2.0}); }) == Errc::NonMonotone);
  auto s = Profile1D::step({0.5, 1.0}, {2.0, 1.0});
  CHECK(s.evaluate(0.25) == 2.0);
  CHECK(s.evaluate(0.5) == 2.0);
  CHECK(s.evaluate(0.75) == 1.0);
  CHECK(Profile1D::power(0.5).evaluate(0.25) == doctest::Approx(2.0));
  CHECK(code_of([] { grand_lebesgue_1d(Profile1D::constant(1), 1.0, 1, LebesgueForm::EpsSup, LogGrid{}); }) ==
        Errc::InvalidArgument);
}

TEST_CASE("homogeneity of every norm") {
  std::mt19937_64 rng(11);
  const double c = 3.7;
  for (int i = 0; i < 3; ++i) {
    auto f = random_step(rng, 3);
    auto cf = f.scaled(c);
    std::vector<NormSpec> specs(6);
    specs[0].space = Space::Lorentz;
    specs[1].space = Space::WeakLorentz;
    specs[2].space = Space::Grand;
    specs[2].theta = {1, 0.5};
    specs[3].space = Space::Grand;
    specs[3].theta = {-1, -1};
    specs[4].space = Space::Grand;
    specs[4].q = {kInf, kInf};
    specs[4].theta = {1, 1};
    specs[5].space = Space::DyadicGrand;
    specs[5].theta = {1, 2};
    for (const auto& s : specs) {
      auto a = s.evaluate(f), b = s.evaluate(cf);
      CHECK_MESSAGE(rel(b.value, c * a.value) < 1e-10, s.label());
      REQUIRE(a.extremal_eps.has_value() == b.extremal_eps.has_value());
      if (a.extremal_eps)
        for (int k = 0; k < 2; ++k) CHECK(rel((*b.extremal_eps)[k], (*a.extremal_eps)[k]) < 1e-6);
    }
  }
}

TEST_CASE("monotonicity under pointwise order") {
  std::vector<NormSpec> specs(4);
  specs[0].space = Space::Lorentz;
  specs[1].space = Space::Grand;
  specs[1].theta = {1, 1};
  specs[2].space = Space::Grand;
  specs[2].theta = {-0.5, -0.5};
  specs[3].space = Space::DyadicGrand;
  specs[3].theta = {1, 1};
  auto small = Rearrangement2D::indicator(0.2, 0.5);
  auto big = Rearrangement2D::indicator(0.4, 0.5, 1.5);
  for (const auto& s : specs) CHECK_MESSAGE(s.evaluate(small).value <= s.evaluate(big).value, s.label());
}

TEST_CASE("weighted functional is non-increasing in epsilon") {
  std::mt19937_64 rng(5);
  auto f = random_step(rng, 5);
  const ParamPair p{2, 2}, q{1, 3};
  const NestedEvaluator ev(cell_model(f), q, LogGrid{});
  const auto grid = log_spaced(1e-6, 1.0, 16);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double v = ev.log_value(0.5 + grid[i], 0.5 + grid[j]);
      if (i + 1 < grid.size()) CHECK(ev.log_value(0.5 + grid[i + 1], 0.5 + grid[j]) <= v + 1e-12);
      if (j + 1 < grid.size()) CHECK(ev.log_value(0.5 + grid[i], 0.5 + grid[j + 1]) <= v + 1e-12);
    }
}

TEST_CASE("norm spec round trip") {
  CHECK(parse_space("Weak-Lorentz") == Space::WeakLorentz);
  CHECK(parse_space("dyadic") == Space::DyadicGrand);
  CHECK(code_of([] { parse_space("sobolev"); }) == Errc::Parse);
  NormSpec s;
  s.space = Space::Grand;
  s.theta = {1, 1};
  auto j = s.to_json();
  CHECK(j["space"] == "grand");
  CHECK(j["grid"]["nodes"] == 4096);
  auto r = s.refined();
  CHECK(r.grid.nodes == 8191);
  CHECK(r.search.coarse_nodes == 127);
  NormResult res;
  res.value = kInf;
  CHECK(to_json(res)["value"] == "inf");
}
