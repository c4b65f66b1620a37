#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "gl/error.hpp"
#include "gl/verify.hpp"

namespace gl {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

NormSpec lorentz_spec(const ParamPair& p, const ParamPair& q) {
  NormSpec s;
  s.space = q.all_infinite() ? Space::WeakLorentz : Space::Lorentz;
  s.p = p;
  s.q = q;
  return s;
}

NormSpec grand_spec(const ParamPair& p, const ParamPair& q, const ThetaPair& theta) {
  validate(GrandParams{p, q, theta});
  NormSpec s;
  s.space = Space::Grand;
  s.p = p;
  s.q = q;
  s.theta = theta;
  return s;
}

void require(bool ok, const std::string& what) {
  if (!ok) fail(Errc::ParameterRelationViolated, what);
}

// eps^s <= eps^theta on (0,1] times the same functional: checked on a 16 x 16
// log grid of the eps box for every member at the base settings.
Check objective_dominance(const ParamPair& p, const ParamPair& q, const ThetaPair& theta, const ThetaPair& s,
                          const TestFamily& family, const VerifyConfig& cfg) {
  Check c;
  c.name = "eps-objective for s lies below the one for theta";
  const GrandParams g = validate(GrandParams{p, q, theta});
  const auto eps = log_spaced(cfg.search.floor, 1.0, 16);
  const Pair2 inv = p.reciprocal();
  std::size_t bad = 0, compared = 0;
  std::vector<char> flags(family.count(), 0);
  std::vector<std::size_t> counts(family.count(), 0);
  parallel_for(
      family.count(),
      [&](std::size_t i) {
        const NestedEvaluator ev(cell_model(family.generate(i)), q, cfg.grid);
        for (double e1 : eps)
          for (double e2 : eps) {
            const double w1 = g.regime == Regime::PosThetaPInf ? e1 : inv[0] + e1;
            const double w2 = g.regime == Regime::PosThetaPInf ? e2 : inv[1] + e2;
            const double base = ev.log_value(w1, w2);
            if (!std::isfinite(base)) continue;
            const double lt = theta.t1 * std::log(e1) + theta.t2 * std::log(e2) + base;
            const double ls = s.t1 * std::log(e1) + s.t2 * std::log(e2) + base;
            ++counts[i];
            if (ls > lt + 1e-12 * std::max(1.0, std::fabs(lt))) flags[i] = 1;
          }
      },
      cfg.threads);
  for (std::size_t i = 0; i < family.count(); ++i) {
    compared += counts[i];
    if (flags[i] && bad++ == 0) c.detail = "first at " + family.labels[i];
  }
  c.passed = bad == 0;
  c.detail = c.passed ? std::to_string(compared) + " grid points compared" : std::to_string(bad) + " members, " + c.detail;
  return c;
}

}  // namespace

Verdict Theorem1Report::verdict() const { return std::max(left.verdict, right.verdict); }

Theorem1Report verify_theorem1(const ParamPair& p, const ParamPair& q, const ThetaPair& theta,
                               const TestFamily& family, const VerifyConfig& cfg) {
  require(theta.t1 > 0 && theta.t2 > 0, "T1 needs theta > 0");
  require(p.all_finite(), "T1 needs finite p");
  Theorem1Report out;
  const NormSpec l = lorentz_spec(p, q);
  const NormSpec plus = grand_spec(p, q, theta);
  const NormSpec minus = grand_spec(p, q, {-theta.t1, -theta.t2});

  out.left = check_embedding(l, minus, family, cfg, "T1 left: L -> GL^-theta");
  // eps^-theta >= p^theta and t^{1/p - eps} >= t^{1/p} bound the ratio by p^-theta.
  const double bound = std::pow(p.a, -theta.t1) * std::pow(p.b, -theta.t2);
  bound_ratios(out.left, 0.0, bound, 1e-6, "ratio <= p1^-theta1 p2^-theta2");

  out.right = check_embedding(plus, l, family, cfg, "T1 right: GL^theta -> L");
  bound_ratios(out.right, 0.0, 1.0, 1e-6, "ratio <= 1");
  return out;
}

Theorem1Report verify_theorem1_corollary(const ParamPair& p, const ThetaPair& theta, const TestFamily& family,
                                         const VerifyConfig& cfg) {
  return verify_theorem1(p, p, theta, family, cfg);
}

EmbeddingReport verify_theorem2(const ParamPair& p, const ThetaPair& theta, const TestFamily& family,
                                const VerifyConfig& cfg) {
  require(theta.t1 > 0 && theta.t2 > 0, "T2 needs theta > 0");
  require(p.all_finite(), "T2 needs finite p");
  NormSpec weak = grand_spec(p, {kInf, kInf}, theta);
  NormSpec logw;
  logw.space = Space::LogWeightWeak;
  logw.p = p;
  logw.theta = theta;
  logw.variant = LogWeightVariant::Guarded;
  const double t_max = std::exp(-std::max(theta.t1, theta.t2));
  weak.grid.t_max = t_max;
  logw.grid.t_max = t_max;
  EmbeddingReport rep = check_embedding(weak, logw, family, cfg, "T2: grand weak vs log-weight weak");
  const double c = std::pow(4.0, theta.t1 + theta.t2);
  bound_ratios(rep, 1 / c, c, 1e-9, "ratio within 4^(theta1+theta2)");
  return rep;
}

EmbeddingReport verify_theorem3(const ParamPair& p, const ParamPair& q, const ThetaPair& theta, const ThetaPair& s,
                                const TestFamily& family, const VerifyConfig& cfg) {
  require(theta.t1 >= 0 && theta.t2 >= 0 && theta.t1 <= s.t1 && theta.t2 <= s.t2, "T3 needs 0 <= theta <= s");
  EmbeddingReport rep =
      check_embedding(grand_spec(p, q, s), grand_spec(p, q, theta), family, cfg, "T3: GL^theta -> GL^s");
  bound_ratios(rep, 0.0, 1.0, 1e-12, "norm non-increasing in theta");
  rep.checks.push_back(objective_dominance(p, q, theta, s, family, cfg));
  rep.finalize();
  return rep;
}

EmbeddingReport verify_theorem4(const ParamPair& p, const ParamPair& q, const ParamPair& rq, const ThetaPair& theta,
                                const TestFamily& family, const VerifyConfig& cfg) {
  require(q.a <= rq.a && q.b <= rq.b, "T4 needs q <= r componentwise");
  return check_embedding(grand_spec(p, rq, theta), grand_spec(p, q, theta), family, cfg, "T4: GL_{p,q} -> GL_{p,r}");
}

EmbeddingReport verify_theorem5(const ParamPair& p, const ParamPair& q, const ThetaPair& theta, const Pair2& delta,
                                const TestFamily& family, const VerifyConfig& cfg) {
  NormSpec full = grand_spec(p, q, theta);
  const GrandParams g = validate(GrandParams{p, q, theta});
  const Pair2 hi = regime_box(g);
  for (int i = 0; i < 2; ++i)
    require(delta[i] > 0 && delta[i] <= hi[i], "T5 needs 0 < delta <= " + fmt(hi[i]));
  NormSpec restricted = full;
  restricted.box_hi = delta;
  // Per axis the objective on [delta, hi] is at most (hi/delta)^|theta| times its value at delta.
  const double eta = std::pow(hi[0] / delta[0], std::fabs(theta.t1)) * std::pow(hi[1] / delta[1], std::fabs(theta.t2));
  EmbeddingReport rep;
  if (g.regime == Regime::NegTheta) {
    rep = check_embedding(restricted, full, family, cfg, "T5: restricted inf over full inf");
    bound_ratios(rep, 1.0, eta, 1e-9, "1 <= restricted/full <= eta^|theta|");
  } else {
    rep = check_embedding(full, restricted, family, cfg, "T5: full sup over restricted sup");
    bound_ratios(rep, 1.0, eta, 1e-9, "1 <= full/restricted <= eta^theta");
  }
  return rep;
}

EmbeddingReport verify_theorem6(const ParamPair& p, const ParamPair& q, const ParamPair& tau, const ThetaPair& theta,
                                const ThetaPair& lam, const TestFamily& family, const VerifyConfig& cfg) {
  require(theta.t1 < lam.t1 && theta.t2 < lam.t2, "T6 needs theta < lambda");
  require(q.a < tau.a && q.b < tau.b, "T6 needs q < tau");
  const Pair2 iq = q.reciprocal(), it = tau.reciprocal();
  const double d1 = lam.t1 - theta.t1 - (iq[0] - it[0]);
  const double d2 = lam.t2 - theta.t2 - (iq[1] - it[1]);
  require(std::fabs(d1) <= 1e-12 && std::fabs(d2) <= 1e-12,
          "T6 needs lambda_i - theta_i = 1/q_i - 1/tau_i (off by " + fmt(d1) + ", " + fmt(d2) + ")");
  return check_embedding(grand_spec(p, q, lam), grand_spec(p, tau, theta), family, cfg,
                         "T6: GL^theta_{p,tau} -> GL^lambda_{p,q}");
}

EmbeddingReport verify_theorem7(const ParamPair& p, const ParamPair& tau, const ThetaPair& theta,
                                const TestFamily& family, const VerifyConfig& cfg) {
  require(p.all_finite() && tau.all_finite(), "T7 needs finite p and tau");
  NormSpec dyadic = grand_spec(p, tau, theta);
  dyadic.space = Space::DyadicGrand;
  dyadic.tau = tau;
  EmbeddingReport rep = check_embedding(dyadic, grand_spec(p, tau, theta), family, cfg, "T7: dyadic vs continuous");
  const Pair2 inv = p.reciprocal();
  const double c = std::pow(2.0, (inv[0] + 1 + 1) + (inv[1] + 1 + 1));
  bound_ratios(rep, 1 / c, c, 1e-9, "ratio within 2^((1/p1+2)+(1/p2+2))");
  return rep;
}

Example1Outcome verify_example1_detail(const ParamPair& p, const ParamPair& r, const ThetaPair& theta,
                                       const ThetaPair& delta, const VerifyConfig& cfg) {
  Example1Outcome out;
  out.near_critical = std::min(delta.t1, delta.t2) < 0.05;
  std::optional<Rearrangement2D> f;
  GrandParams g;
  try {
    f.emplace(analytic_example1(p, r, theta, delta));
    g = validate(GrandParams{p, r, theta});
  } catch (const Error& e) {
    out.note = std::string(to_string(e.code())) + ": " + e.what();
    return out;
  }
  LogGrid grid = cfg.grid;
  SearchConfig search = cfg.search;
  std::vector<LogGrid> grids;
  std::vector<SearchConfig> searches;
  for (std::size_t k = 0; k < cfg.levels; ++k) {
    grids.push_back(grid);
    searches.push_back(search);
    grid.t_min = grid.t_min * grid.t_min;
    grid = grid.doubled();
    search = search.refined();
  }
  out.values.assign(cfg.levels, 0.0);
  std::vector<std::string> notes(cfg.levels);
  parallel_for(
      cfg.levels,
      [&](std::size_t k) {
        const NormResult res = grand_norm(*f, g, grids[k], searches[k]);
        out.values[k] = res.value;
        notes[k] = res.diagnostics.note;
      },
      cfg.threads);
  bool finite = true;
  for (std::size_t k = 0; k < cfg.levels; ++k) {
    finite = finite && std::isfinite(out.values[k]) && out.values[k] > 0;
    if (k > 0)
      out.drift = std::max(out.drift, std::fabs(out.values[k] - out.values[k - 1]) /
                                          std::max(out.values[k], out.values[k - 1]));
  }
  out.member = finite && out.drift < cfg.drift_tol;
  if (!finite)
    out.note = "norm not finite: " + notes.back();
  else if (!out.member)
    out.note = "drift " + fmt(out.drift) + " under refinement";
  if (out.near_critical) out.note += std::string(out.note.empty() ? "" : "; ") + "near-critical delta";
  return out;
}

bool verify_example1(const ParamPair& p, const ParamPair& r, const ThetaPair& theta, const ThetaPair& delta,
                     const VerifyConfig& cfg) {
  return verify_example1_detail(p, r, theta, delta, cfg).member;
}

}  // namespace gl
