// Acceptance run: one PASS/FAIL line per criterion. Optional argument: path
// to the gl_cli executable (criterion 10 then spawns it twice).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gl/cli.hpp"
#include "gl/error.hpp"
#include "gl/verify.hpp"
#include "oracles.hpp"

using namespace gl;

namespace {

// Tolerances.
constexpr int kRandomGrids = 200;
constexpr std::size_t kMaxGridSide = 64;
constexpr double kRearrangeSeconds = 5.0;
constexpr double kClosedFormRel = 1e-6;
constexpr double kGrandConstantAbs = 1e-4;
constexpr double kNegThetaConstantAbs = 1e-3;
constexpr double kClosedFormSeconds = 30.0;
constexpr double kRightRatioSlack = 1e-6;
constexpr double kDriftTol = 0.05;
constexpr double kDyadicTail = 1e-6;
constexpr int kDyadicDepth = 60;
constexpr double kLebesgueRel = 1e-6;
constexpr double kLebesgueFactor = 4.0;
constexpr double kNearCriticalDelta = 0.01;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

GrandParams gp(ParamPair p, ParamPair q, ThetaPair th) { return validate(GrandParams{p, q, th}); }

Outcome rearrangement_oracle() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> side(1, kMaxGridSide);
  std::uniform_int_distribution<int> level(0, 9);
  std::uniform_real_distribution<double> real(0.0, 100.0);
  const auto start = std::chrono::steady_clock::now();
  int bad = 0;
  for (int g = 0; g < kRandomGrids; ++g) {
    const std::size_t n1 = side(rng), n2 = side(rng);
    std::vector<std::vector<double>> rows(n2, std::vector<double>(n1));
    for (auto& row : rows)
      for (double& v : row) v = g % 2 ? static_cast<double>(level(rng)) : real(rng);
    const GridFunction2D f(Matrix::from_rows(rows));
    const Rearrangement2D r = iterated_rearrangement(f);
    const auto expect = oracle::two_stage_selection_sort(rows);
    const Matrix& got = r.step_data()->values;
    std::vector<double> a, b;
    bool same = got.rows() == n2 && got.cols() == n1;
    for (std::size_t i = 0; same && i < n2; ++i)
      for (std::size_t j = 0; j < n1; ++j) {
        same = same && got(i, j) == expect[i][j];
        a.push_back(got(i, j));
        b.push_back(rows[i][j]);
      }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (!same || a != b || !r.is_monotone() || !equimeasurable_check(f, r)) ++bad;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {bad == 0 && secs < kRearrangeSeconds,
          std::to_string(kRandomGrids - bad) + "/" + std::to_string(kRandomGrids) + " grids match, " + num(secs) + " s"};
}

Outcome closed_forms() {
  const auto start = std::chrono::steady_clock::now();
  const LogGrid g;
  double worst = 0.0;
  // Lorentz norm of height * indicator: prod_i (p_i/q_i)^{1/q_i} a_i^{1/p_i}.
  // The default grid drops (0, 2^-40), about t_min^{q/p}/q relative, so q_i/p_i >= 2/3 here.
  struct Case {
    double a1, a2, h;
    ParamPair p, q;
  };
  const std::vector<Case> cases = {{1, 1, 1, {2, 2}, {2, 2}},     {0.25, 0.25, 1, {2, 2}, {2, 2}},
                                   {0.5, 0.125, 3, {1.5, 1.5}, {1, 4}}, {1, 1, 2, {3, 1.5}, {2, 1}},
                                   {0.7, 1, 1, {1, 1}, {1, 1}},   {0.01, 0.3, 5, {2, 1.5}, {3, 2}}};
  for (const auto& c : cases) {
    const auto r = c.a1 == 1 && c.a2 == 1 ? Rearrangement2D::constant(c.h) : Rearrangement2D::indicator(c.a1, c.a2, c.h);
    const double expect = c.h * std::pow(c.p.a / c.q.a, 1 / c.q.a) * std::pow(c.a1, 1 / c.p.a) *
                          std::pow(c.p.b / c.q.b, 1 / c.q.b) * std::pow(c.a2, 1 / c.p.b);
    worst = std::max(worst, rel(lorentz_norm(r, c.p, c.q, g).value, expect));
  }
  // r = 1, p = q = 1: per axis sup e/(1+e) and inf 1/(e(1-e)).
  const double pos_axis = oracle::dense_max([](double e) { return e / (1 + e); }, 1e-6, 1.0);
  const double neg_axis = oracle::dense_min([](double e) { return 1 / (e * (1 - e)); }, 1e-6, 1.0 - 1e-9);
  const double pos = grand_norm(Rearrangement2D::constant(1), gp({1, 1}, {1, 1}, {1, 1}), g).value;
  const double neg = grand_norm(Rearrangement2D::constant(1), gp({1, 1}, {1, 1}, {-1, -1}), g).value;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = worst <= kClosedFormRel && std::fabs(pos - 0.25) <= kGrandConstantAbs &&
                    std::fabs(pos - pos_axis * pos_axis) <= kGrandConstantAbs &&
                    std::fabs(neg - 16) <= kNegThetaConstantAbs &&
                    std::fabs(neg - neg_axis * neg_axis) <= kNegThetaConstantAbs && secs < kClosedFormSeconds;
  return {pass, "lorentz worst rel " + num(worst) + ", grand " + num(pos) + ", inf regime " + num(neg) + ", " +
                    num(secs) + " s"};
}

Outcome remark_consistency() {
  const LogGrid g;
  const ParamPair p{2, 3}, q{1.5, 2};
  std::size_t n = 0, agree = 0, both_inf = 0;
  std::string first;
  for (const auto& fam : registered_families())
    for (std::size_t i = 0; i < fam.count(); ++i) {
      const auto r = fam.generate(i);
      const double l = lorentz_norm(r, p, q, g).value;
      const double v = grand_norm(r, gp(p, q, {0, 0}), g).value;
      ++n;
      if (std::isinf(l) && std::isinf(v)) {
        ++agree;
        ++both_inf;
      } else if (std::isfinite(l) && std::isfinite(v) && rel(v, l) <= 2 * g.rel_tol) {
        ++agree;
      } else if (first.empty()) {
        first = fam.labels[i] + ": " + num(v) + " vs " + num(l);
      }
    }
  return {n >= 40 && agree == n, std::to_string(agree) + "/" + std::to_string(n) + " agree (" +
                                     std::to_string(both_inf) + " both infinite)" +
                                     (first.empty() ? "" : ", first miss " + first)};
}

bool right_bounded(const EmbeddingReport& rep) {
  for (const auto& m : rep.members)
    if (m.status == MemberStatus::Ok)
      for (double r : m.ratio)
        if (r > 1 + kRightRatioSlack) return false;
  return true;
}

Outcome theorem1(const VerifyConfig& cfg) {
  const TestFamily all = family_by_name("all");
  bool pass = true;
  std::string detail;
  struct Set {
    ParamPair p, q;
    ThetaPair th;
  };
  for (const Set& s : {Set{{2, 2}, {2, 2}, {1, 1}}, Set{{3, 1.5}, {2, 1}, {0.5, 2}}}) {
    const auto rep = verify_theorem1(s.p, s.q, s.th, all, cfg);
    const bool ok = rep.verdict() == Verdict::Pass && right_bounded(rep.right) && std::isfinite(rep.left.c_hat) &&
                    rep.left.stable && rep.left.drift < kDriftTol;
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += "p=" + to_string(s.p) + " q=" + to_string(s.q) + " theta=" + to_string(s.th) + ": left C " +
              num(rep.left.c_hat) + " drift " + num(rep.left.drift) + ", right C " + num(rep.right.c_hat) + " [" +
              to_string(rep.verdict()) + "]";
  }
  return {pass, detail};
}

Outcome theorems3to6(const VerifyConfig& cfg) {
  const TestFamily all = family_by_name("all");
  struct Point {
    std::string name;
    std::function<EmbeddingReport()> run;
  };
  const std::vector<Point> lattice = {
      {"T3 p=2,2 q=2,2 theta=1,1 s=2,2", [&] { return verify_theorem3({2, 2}, {2, 2}, {1, 1}, {2, 2}, all, cfg); }},
      {"T3 p=1,1 q=1,1 theta=0.5,0.5 s=1,1",
       [&] { return verify_theorem3({1, 1}, {1, 1}, {0.5, 0.5}, {1, 1}, all, cfg); }},
      {"T3 p=4,2 q=2,3 theta=0,1 s=1,1.5", [&] { return verify_theorem3({4, 2}, {2, 3}, {0, 1}, {1, 1.5}, all, cfg); }},
      {"T4 p=2,2 q=1,1 r=2,2 theta=1,1", [&] { return verify_theorem4({2, 2}, {1, 1}, {2, 2}, {1, 1}, all, cfg); }},
      {"T4 p=3,2 q=1,2 r=4,3 theta=0.5,1", [&] { return verify_theorem4({3, 2}, {1, 2}, {4, 3}, {0.5, 1}, all, cfg); }},
      {"T4 p=2,4 q=1.5,1 r=1.5,2 theta=2,0.5",
       [&] { return verify_theorem4({2, 4}, {1.5, 1}, {1.5, 2}, {2, 0.5}, all, cfg); }},
      {"T5 p=1,1 q=1,1 theta=1,1 delta=0.5,0.5",
       [&] { return verify_theorem5({1, 1}, {1, 1}, {1, 1}, {0.5, 0.5}, all, cfg); }},
      {"T5 p=2,2 q=2,2 theta=-1,-1 delta=0.25,0.25",
       [&] { return verify_theorem5({2, 2}, {2, 2}, {-1, -1}, {0.25, 0.25}, all, cfg); }},
      {"T6 p=2,2 q=1,1 tau=2,2 theta=1,1 lambda=1.5,1.5",
       [&] { return verify_theorem6({2, 2}, {1, 1}, {2, 2}, {1, 1}, {1.5, 1.5}, all, cfg); }},
      {"T6 p=2,3 q=1,2 tau=2,4 theta=0.5,1 lambda=1,1.25",
       [&] { return verify_theorem6({2, 3}, {1, 2}, {2, 4}, {0.5, 1}, {1, 1.25}, all, cfg); }},
  };
  std::size_t good = 0;
  std::string misses;
  for (const auto& pt : lattice) {
    std::string why;
    try {
      const EmbeddingReport rep = pt.run();
      bool ok = std::isfinite(rep.c_hat) && rep.stable && rep.verdict == Verdict::Pass;
      for (const auto& c : rep.checks) ok = ok && c.passed;
      if (!ok) why = "C " + num(rep.c_hat) + " drift " + num(rep.drift) + " [" + to_string(rep.verdict) + "]";
    } catch (const Error& e) {
      why = e.what();
    }
    if (why.empty())
      ++good;
    else
      misses += "; " + pt.name + ": " + why;
  }
  return {good == lattice.size(), std::to_string(good) + "/" + std::to_string(lattice.size()) + " points pass" + misses};
}

Outcome theorem2(const VerifyConfig& cfg) {
  std::string detail;
  bool pass = true;
  for (const auto& fam : {indicators_family(), example1_family()}) {
    const auto rep = verify_theorem2({2, 2}, {1, 1}, fam, cfg);
    bool ok = rep.verdict == Verdict::Pass;
    for (const auto& c : rep.checks) ok = ok && c.passed;
    pass = pass && ok;
    detail += fam.name + " C " + num(rep.c_hat) + " [" + to_string(rep.verdict) + "], ";
  }
  // Arg-sup of the weak grand norm on single-scale indicators.
  const double spacing = std::log(1.0 / SearchConfig{}.floor) / (SearchConfig{}.coarse_nodes - 1);
  double worst = 0.0;
  for (double a : {std::exp(-1.0), std::exp(-2.0), std::exp(-4.0), 0.3, 0.05}) {
    const auto r = grand_weak_norm(Rearrangement2D::indicator(a, a), gp({1, 1}, {kInf, kInf}, {1, 1}), LogGrid{});
    const double e = optimal_epsilon(1.0, a, 1.0);
    for (double x : *r.extremal_eps) worst = std::max(worst, std::fabs(std::log(x / e)));
  }
  pass = pass && worst <= spacing;
  return {pass, detail + "arg-sup log error " + num(worst) + " (spacing " + num(spacing) + ")"};
}

Outcome theorem7(const VerifyConfig& cfg) {
  const TestFamily all = family_by_name("all");
  const auto rep = verify_theorem7({1, 1}, {1, 1}, {1, 1}, all, cfg);
  bool ok = rep.verdict == Verdict::Pass;
  for (const auto& c : rep.checks) ok = ok && c.passed;
  DyadicTruncation trunc;
  trunc.depth = kDyadicDepth;
  double worst = 0.0;
  for (std::size_t i = 0; i < all.count(); ++i) {
    const auto r = dyadic_grand_norm(all.generate(i), gp({1, 1}, {1, 1}, {1, 1}), {1, 1}, trunc);
    worst = std::max(worst, r.diagnostics.tail);
  }
  return {ok && worst < kDyadicTail, "C " + num(rep.c_hat) + " [" + to_string(rep.verdict) + "], worst depth-" +
                                         std::to_string(kDyadicDepth) + " tail " + num(worst)};
}

Outcome example1(const VerifyConfig& cfg) {
  std::size_t good = 0;
  std::string misses;
  const ParamPair p{2, 2}, r{2, 2};
  for (double th : {1.5, 2.0, 3.0})
    for (double d : {0.25, 0.5, 1.0}) {
      const auto o = verify_example1_detail(p, r, {th, th}, {d, d}, cfg);
      bool ok = o.member && o.drift < kDriftTol;
      for (double v : o.values) ok = ok && std::isfinite(v);
      if (ok)
        ++good;
      else
        misses += "; theta=" + num(th) + " delta=" + num(d) + ": " + o.note;
    }
  const auto near = verify_example1_detail(p, r, {2, 2}, {kNearCriticalDelta, kNearCriticalDelta}, cfg);
  bool near_ok = near.near_critical && !near.values.empty();
  for (double v : near.values) near_ok = near_ok && std::isfinite(v);
  return {good == 9 && near_ok, std::to_string(good) + "/9 lattice members, delta=0.01 probe " +
                                    (near_ok ? "flagged and finite" : "failed: " + near.note) + misses};
}

Outcome lebesgue_1d() {
  const LogGrid g;
  double worst = 0.0;
  worst = std::max(worst, rel(grand_lebesgue_1d(Profile1D::constant(1), 2, 1, LebesgueForm::EpsSup, g).value, 1.0));
  const bool zeros = grand_lebesgue_1d(Profile1D::constant(0), 2, 1, LebesgueForm::EpsSup, g).value == 0.0 &&
                     grand_lebesgue_1d(Profile1D::constant(0), 2, 1, LebesgueForm::LogChar, g).value == 0.0;
  const double scan = oracle::dense_max([](double e) { return e * std::pow(2 / e, 1 / (2 - e)); }, 1e-6, 1.0);
  worst = std::max(worst, rel(grand_lebesgue_1d(Profile1D::power(0.5), 2, 1, LebesgueForm::EpsSup, g).value, scan));
  double factor = 1.0;
  for (double alpha : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
    const auto f = Profile1D::power(alpha);
    const double a = grand_lebesgue_1d(f, 2, 1, LebesgueForm::EpsSup, g).value;
    const double b = grand_lebesgue_1d(f, 2, 1, LebesgueForm::LogChar, g).value;
    factor = std::max({factor, a / b, b / a});
  }
  return {worst <= kLebesgueRel && zeros && factor <= kLebesgueFactor,
          "worst rel " + num(worst) + ", zero profile " + (zeros ? "ok" : "wrong") + ", max form factor " + num(factor)};
}

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  pclose(pipe);
  return out;
}

Outcome cli_determinism(const std::string& exe) {
  const std::vector<std::string> args = {"verify", "T1", "--p", "2,2", "--q", "2,2", "--theta", "1,1"};
  std::string a, b;
  if (exe.empty()) {
    std::ostringstream o1, o2, e;
    cli::run(args, o1, e);
    cli::run(args, o2, e);
    a = o1.str();
    b = o2.str();
  } else {
    std::string cmd = "'" + exe + "'";
    for (const auto& s : args) cmd += " " + s;
    a = capture(cmd);
    b = capture("GL_THREADS=1 " + cmd);
  }
  return {!a.empty() && a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different") +
                                    (exe.empty() ? " (in process)" : " (two processes, default and 1 thread)")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  VerifyConfig cfg;
  cfg.drift_tol = kDriftTol;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"rearrangement oracle equivalence", rearrangement_oracle},
      {"closed-form norm reproduction", closed_forms},
      {"theta = 0 agrees with the lorentz norm", remark_consistency},
      {"lorentz / grand lorentz sandwich", [&] { return theorem1(cfg); }},
      {"embedding lattice (T3-T6)", [&] { return theorems3to6(cfg); }},
      {"log-weight weak equivalence (T2)", [&] { return theorem2(cfg); }},
      {"dyadic equivalence (T7)", [&] { return theorem7(cfg); }},
      {"example 1 membership", [&] { return example1(cfg); }},
      {"one-dimensional grand lebesgue norms", lebesgue_1d},
      {"cli determinism", [&] { return cli_determinism(exe); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail << " ["
              << num(secs) << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
