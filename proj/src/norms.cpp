#include "gl/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gl/error.hpp"

namespace gl {

namespace {

constexpr double kPosInf = std::numeric_limits<double>::infinity();

Diagnostics grid_diagnostics(const LogGrid& grid) {
  Diagnostics d;
  d.nodes = grid.nodes;
  d.t_min = grid.t_min;
  d.t_max = grid.t_max;
  return d;
}

void require_finite(const ParamPair& p, const char* what) {
  if (p.any_infinite()) fail(Errc::InvalidArgument, std::string(what) + " must be finite");
}

void require_positive_theta(const ThetaPair& th) {
  if (!std::isfinite(th.t1) || !std::isfinite(th.t2)) fail(Errc::NonFiniteTheta, "theta must be finite");
  if (!(th.t1 > 0 && th.t2 > 0)) fail(Errc::InvalidArgument, "theta must be positive");
}

// Fills value/converged/tail from a fixed-weight evaluation.
NormResult fixed_weight(const NestedEvaluator& ev, Pair2 w, const LogGrid& grid) {
  NormResult res;
  res.diagnostics = grid_diagnostics(grid);
  const double lv = ev.log_value(w[0], w[1]);
  res.value = std::exp(lv);
  if (ev.diverges(w[0], w[1]) || lv == kPosInf) {
    res.value = kPosInf;
    res.converged = false;
    res.diagnostics.tail = kPosInf;
    res.diagnostics.note = "diverges as t -> 0";
    return res;
  }
  res.diagnostics.tail = ev.tail_fraction(w[0], w[1]);
  res.converged = std::isfinite(res.value) && res.diagnostics.tail <= grid.rel_tol;
  return res;
}

Pair2 regime_weight(const GrandParams& g, Pair2 eps) {
  const Pair2 inv = g.p.reciprocal();
  Pair2 w{};
  for (int i = 0; i < 2; ++i) {
    switch (g.regime) {
      case Regime::PosTheta: w[i] = inv[i] + eps[i]; break;
      case Regime::PosThetaPInf: w[i] = eps[i]; break;
      case Regime::NegTheta: w[i] = inv[i] - eps[i]; break;
    }
  }
  return w;
}

Pair2 resolve_box(const GrandParams& g, std::optional<Pair2> box_hi) {
  const Pair2 full = regime_box(g);
  if (!box_hi) return full;
  for (int i = 0; i < 2; ++i)
    if (!((*box_hi)[i] > 0 && (*box_hi)[i] <= full[i]))
      fail(Errc::InvalidArgument, "epsilon box must lie inside the regime box");
  return *box_hi;
}

NormResult grand_common(const Rearrangement2D& r, const GrandParams& g, const ParamPair& q, const LogGrid& grid,
                        const SearchConfig& search, std::optional<Pair2> box_hi) {
  grid.validate();
  search.validate();
  const Pair2 hi = resolve_box(g, box_hi);
  const NestedEvaluator ev(cell_model(r), q, grid);
  auto w_of = [&](int axis, double e) {
    Pair2 eps{e, e};
    return regime_weight(g, eps)[axis];
  };
  SeparableObjective obj;
  obj.state1 = [&](double e) { return ev.inner(w_of(0, e)); };
  obj.state2 = [&](double e) { return ev.outer(w_of(1, e)); };
  obj.combine = [&](const std::vector<double>& a, const std::vector<double>& b) { return ev.combine(a, b); };
  obj.theta = {g.theta.t1, g.theta.t2};
  const bool maximize = g.regime != Regime::NegTheta;
  const SearchOutcome out = extremize(obj, hi, maximize, search);

  NormResult res;
  res.diagnostics = grid_diagnostics(grid);
  res.diagnostics.search_evaluations = out.evaluations;
  res.extremal_eps = out.arg;
  res.value = std::exp(out.log_value);
  const Pair2 w = regime_weight(g, out.arg);
  if (out.log_value == kPosInf || ev.diverges(w[0], w[1])) {
    res.value = kPosInf;
    res.converged = false;
    res.diagnostics.tail = kPosInf;
    res.diagnostics.note = "diverges as t -> 0";
    return res;
  }
  if (maximize) {
    // An extremum on the scan floor whose eps -> 0 limit is infinite.
    const double floor = search.floor;
    for (int i = 0; i < 2; ++i) {
      if (out.arg[i] > floor * (1 + 1e-9)) continue;
      Pair2 eps = out.arg;
      eps[i] = 0.0;
      const Pair2 w0 = regime_weight(g, eps);
      if (!ev.diverges(w0[0], w0[1])) continue;
      res.converged = false;
      res.diagnostics.tail = kPosInf;
      if (obj.theta[i] == 0.0) {
        res.value = kPosInf;
        res.diagnostics.note = "grows without bound as eps -> 0";
      } else {
        res.diagnostics.note = "extremum on the eps scan floor";
      }
      return res;
    }
  }
  res.diagnostics.tail = ev.tail_fraction(w[0], w[1]);
  res.converged = std::isfinite(res.value) && res.diagnostics.tail <= grid.rel_tol;
  if (!res.converged) res.diagnostics.note = "mass below t_min at the extremal epsilon";
  return res;
}

}  // namespace

NormResult lorentz_norm(const Rearrangement2D& r, const ParamPair& p, const ParamPair& q, const LogGrid& grid) {
  require_finite(p, "p");
  require_finite(q, "q");
  const NestedEvaluator ev(cell_model(r), q, grid);
  return fixed_weight(ev, p.reciprocal(), grid);
}

NormResult weak_lorentz_norm(const Rearrangement2D& r, const ParamPair& p, const LogGrid& grid) {
  const NestedEvaluator ev(cell_model(r), ParamPair{kInf, kInf}, grid);
  return fixed_weight(ev, p.reciprocal(), grid);
}

Pair2 regime_box(const GrandParams& gp) {
  const GrandParams g = validate(gp);
  if (g.regime == Regime::NegTheta) return g.p.reciprocal();
  return {1.0, 1.0};
}

NormResult grand_norm(const Rearrangement2D& r, const GrandParams& gp, const LogGrid& grid,
                      const SearchConfig& search, std::optional<Pair2> box_hi) {
  const GrandParams g = validate(gp);
  if (g.weak()) return grand_weak_norm(r, g, grid, search, box_hi);
  return grand_common(r, g, g.q, grid, search, box_hi);
}

NormResult grand_weak_norm(const Rearrangement2D& r, const GrandParams& gp, const LogGrid& grid,
                           const SearchConfig& search, std::optional<Pair2> box_hi) {
  const GrandParams g = validate(gp);
  if (!g.weak()) fail(Errc::InvalidArgument, "grand_weak_norm needs q = (inf, inf)");
  return grand_common(r, g, g.q, grid, search, box_hi);
}

NormResult log_weight_weak_norm(const Rearrangement2D& r, const ParamPair& p, const ThetaPair& theta,
                                const LogGrid& grid, LogWeightVariant variant) {
  require_finite(p, "p");
  require_positive_theta(theta);
  const bool literal = variant == LogWeightVariant::Literal;
  const AxisFactor f1 = literal ? AxisFactor::log_power(-theta.t1) : AxisFactor::guarded(theta.t1);
  const AxisFactor f2 = literal ? AxisFactor::log_power(-theta.t2) : AxisFactor::guarded(theta.t2);
  const NestedEvaluator ev(cell_model(r), ParamPair{kInf, kInf}, grid, f1, f2);
  const Pair2 w = p.reciprocal();
  NormResult res = fixed_weight(ev, w, grid);
  if (literal && res.value == kPosInf && !ev.diverges(w[0], w[1]))
    fail(Errc::NonFiniteValue, "log-weighted sup is infinite near t = 1");
  return res;
}

NormResult log_weight_integral_bound(const Rearrangement2D& r, const ParamPair& p, const ParamPair& q,
                                     const ThetaPair& theta, BoundSide side, const LogGrid& grid) {
  require_finite(p, "p");
  require_finite(q, "q");
  require_positive_theta(theta);
  const double sign = side == BoundSide::UpperForPosTheta ? -1.0 : 1.0;
  const NestedEvaluator ev(cell_model(r), q, grid, AxisFactor::log_power(sign * theta.t1),
                           AxisFactor::log_power(sign * theta.t2));
  NormResult res = fixed_weight(ev, p.reciprocal(), grid);
  if (res.value == kPosInf && res.diagnostics.note.empty()) {
    res.converged = false;
    res.diagnostics.note = "diverges as t -> 1";
  }
  return res;
}

double optimal_epsilon(double theta, double t, std::optional<double> hi) {
  if (!std::isfinite(theta) || theta == 0.0) fail(Errc::InvalidArgument, "theta must be finite and non-zero");
  if (!(t > 0.0 && t <= 1.0)) fail(Errc::OutOfDomain, "t must lie in (0,1]");
  if (t == 1.0) fail(Errc::TAtOne, "optimal epsilon is undefined at t = 1");
  const double e = std::fabs(theta) / std::fabs(std::log(t));
  if (hi) {
    if (!(*hi > 0)) fail(Errc::InvalidArgument, "clamp bound must be positive");
    return std::min(e, *hi);
  }
  return e;
}

const char* to_string(LogWeightVariant v) noexcept { return v == LogWeightVariant::Literal ? "Literal" : "Guarded"; }

const char* to_string(BoundSide s) noexcept {
  return s == BoundSide::UpperForPosTheta ? "UpperForPosTheta" : "LowerForNegTheta";
}

const char* to_string(LebesgueForm f) noexcept { return f == LebesgueForm::EpsSup ? "EpsSup" : "LogChar"; }

}  // namespace gl
