#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gl/error.hpp"
#include "gl/verify.hpp"

namespace gl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

NormSpec at_level(NormSpec s, std::size_t level) {
  for (std::size_t k = 0; k < level; ++k) s = s.refined();
  return s;
}

NormSpec with_settings(NormSpec s, const VerifyConfig& cfg) {
  // Region restrictions (t_max) on each NormSpec survive the shared grid settings.
  const double t_max = s.grid.t_max;
  s.grid = cfg.grid;
  s.grid.t_max = t_max;
  s.search = cfg.search;
  s.trunc = cfg.trunc;
  return s;
}

struct Eval {
  double value = kNaN;
  bool converged = true;
  std::string error;
  std::string note;
};

}  // namespace

const char* to_string(MemberStatus s) noexcept {
  switch (s) {
    case MemberStatus::Ok: return "ok";
    case MemberStatus::Vacuous: return "vacuous";
    case MemberStatus::Violation: return "violation";
    case MemberStatus::Error: return "error";
  }
  return "?";
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Diverged: return "diverged";
    case Verdict::Violated: return "violated";
  }
  return "?";
}

std::size_t EmbeddingReport::count(MemberStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(members.begin(), members.end(), [s](const MemberOutcome& m) { return m.status == s; }));
}

void EmbeddingReport::finalize() {
  const bool checks_ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  if (!checks_ok)
    verdict = Verdict::Violated;
  else if (count(MemberStatus::Violation) > 0)
    verdict = Verdict::Diverged;
  else if (count(MemberStatus::Error) > 0 || count(MemberStatus::Ok) == 0 || !stable)
    verdict = Verdict::Inconclusive;
  else
    verdict = Verdict::Pass;
}

EmbeddingReport check_embedding(const NormSpec& left, const NormSpec& right, const TestFamily& family,
                                const VerifyConfig& cfg, std::string title) {
  if (family.count() == 0) fail(Errc::FamilyEmpty, "family '" + family.name + "' has no members");
  if (cfg.levels == 0) fail(Errc::InvalidArgument, "need at least one refinement level");
  EmbeddingReport rep;
  rep.title = std::move(title);
  rep.left = with_settings(left, cfg);
  rep.right = with_settings(right, cfg);
  rep.family = family.name;

  const std::size_t n = family.count(), levels = cfg.levels;
  std::vector<NormSpec> lspec, rspec;
  for (std::size_t k = 0; k < levels; ++k) {
    lspec.push_back(at_level(rep.left, k));
    rspec.push_back(at_level(rep.right, k));
  }
  // Task t = ((member * levels) + level) * 2 + side.
  std::vector<Eval> evals(n * levels * 2);
  parallel_for(
      evals.size(),
      [&](std::size_t t) {
        const std::size_t side = t % 2, level = (t / 2) % levels, i = t / (2 * levels);
        Eval& e = evals[t];
        try {
          const Rearrangement2D r = family.generate(i);
          const NormResult res = (side == 0 ? lspec : rspec)[level].evaluate(r);
          e.value = res.value;
          e.converged = res.converged;
          e.note = res.diagnostics.note;
        } catch (const Error& err) {
          e.error = std::string(to_string(err.code())) + ": " + err.what();
        }
      },
      cfg.threads);

  rep.c_hat_levels.assign(levels, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    MemberOutcome m;
    m.index = i;
    m.label = family.labels[i];
    for (std::size_t k = 0; k < levels; ++k) {
      const Eval& l = evals[(i * levels + k) * 2];
      const Eval& r = evals[(i * levels + k) * 2 + 1];
      if (!l.error.empty() || !r.error.empty()) {
        m.status = MemberStatus::Error;
        m.note = !l.error.empty() ? "left " + l.error : "right " + r.error;
        break;
      }
      m.left.push_back(l.value);
      m.right.push_back(r.value);
      m.ratio.push_back(l.value / r.value);
      if (m.status != MemberStatus::Ok) continue;
      if (std::isinf(r.value) || r.value == 0.0) {
        m.status = MemberStatus::Vacuous;
        m.note = r.value == 0.0 ? "right norm is zero" : "right norm is infinite";
      } else if (!r.converged) {
        m.status = MemberStatus::Vacuous;
        m.note = "right norm not converged: " + r.note;
      } else if (std::isinf(l.value)) {
        m.status = MemberStatus::Violation;
        m.note = "left norm infinite while right norm is " + fmt(r.value);
      } else if (!l.converged) {
        m.status = MemberStatus::Error;
        m.note = "left norm not converged: " + l.note;
      }
    }
    if (m.status == MemberStatus::Ok)
      for (std::size_t k = 0; k < levels; ++k) rep.c_hat_levels[k] = std::max(rep.c_hat_levels[k], m.ratio[k]);
    else
      rep.failures.push_back(m.label + " [" + to_string(m.status) + "] " + m.note);
    rep.members.push_back(std::move(m));
  }

  rep.c_hat = rep.c_hat_levels.back();
  rep.drift = 0.0;
  for (std::size_t k = 1; k < levels; ++k) {
    const double a = rep.c_hat_levels[k - 1], b = rep.c_hat_levels[k];
    if (a == b) continue;
    rep.drift = std::max(rep.drift, std::fabs(b - a) / std::max(std::fabs(a), std::fabs(b)));
  }
  rep.stable = rep.count(MemberStatus::Ok) > 0 && std::isfinite(rep.c_hat) && rep.drift < cfg.drift_tol;
  rep.finalize();
  return rep;
}

void bound_ratios(EmbeddingReport& rep, double lo, double hi, double slack, const std::string& name) {
  Check c;
  c.name = name;
  std::size_t bad = 0;
  for (const auto& m : rep.members) {
    if (m.status != MemberStatus::Ok) continue;
    for (double r : m.ratio)
      if (r < lo * (1 - slack) || r > hi * (1 + slack)) {
        if (bad++ == 0) c.detail = m.label + " ratio " + fmt(r);
      }
  }
  c.passed = bad == 0;
  c.detail = c.passed ? "all ratios in [" + fmt(lo) + ", " + fmt(hi) + "]"
                      : std::to_string(bad) + " outside [" + fmt(lo) + ", " + fmt(hi) + "], first: " + c.detail;
  rep.checks.push_back(c);
  rep.finalize();
}

}  // namespace gl
