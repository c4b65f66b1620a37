#include <algorithm>
#include <cmath>
#include <limits>

#include "gl/error.hpp"
#include "gl/logspace.hpp"
#include "gl/norms.hpp"

namespace gl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

struct DyadicObjective {
  const Matrix& log_r;  // log r(2^{-j1}, 2^{-j2}) at (j2, j1)
  std::size_t depth;
  ParamPair tau;
  Pair2 inv_p;
  double sign;  // +1 for 1/p + eps, -1 for 1/p - eps
  // Row j2 of r^{tau1} in linear scale, divided by e^{shift[j2]}.
  Matrix scaled;
  std::vector<double> shift;

  DyadicObjective(const Matrix& lr, std::size_t d, ParamPair t, Pair2 ip, double sg)
      : log_r(lr), depth(d), tau(t), inv_p(ip), sign(sg), scaled(d + 1, d + 1), shift(d + 1, kNegInf) {
    for (std::size_t j2 = 0; j2 <= depth; ++j2) {
      for (std::size_t j1 = 0; j1 <= depth; ++j1) shift[j2] = std::max(shift[j2], tau.a * log_r(j2, j1));
      for (std::size_t j1 = 0; j1 <= depth; ++j1)
        scaled(j2, j1) = shift[j2] == kNegInf ? 0.0 : std::exp(tau.a * log_r(j2, j1) - shift[j2]);
    }
  }

  double row_exact(std::size_t j2, double w) const {
    std::vector<double> terms(depth + 1);
    for (std::size_t j1 = 0; j1 <= depth; ++j1) {
      const double lr = log_r(j2, j1);
      terms[j1] = lr == kNegInf ? kNegInf : tau.a * (lr - static_cast<double>(j1) * std::log(2.0) * w);
    }
    return log_sum_exp(terms);
  }

  std::vector<double> inner(double e) const {
    const double w = inv_p[0] + sign * e;
    const double z = std::exp2(-tau.a * w);
    std::vector<double> in(depth + 1);
    for (std::size_t j2 = 0; j2 <= depth; ++j2) {
      if (shift[j2] == kNegInf) {
        in[j2] = kNegInf;
        continue;
      }
      // Horner in z = 2^{-tau1 w}.
      double acc = 0.0;
      for (std::size_t j1 = depth + 1; j1-- > 0;) acc = acc * z + scaled(j2, j1);
      in[j2] = acc > 0 && std::isfinite(acc) ? shift[j2] + std::log(acc) : row_exact(j2, w);
    }
    return in;
  }

  // Inner state in linear form: [shift, c_0, ..., c_depth] with
  // c_j = exp((tau2/tau1) in_j - shift).
  std::vector<double> inner_state(double e) const {
    const auto in = inner(e);
    double m = kNegInf;
    for (double v : in) m = std::max(m, (tau.b / tau.a) * v);
    std::vector<double> st(in.size() + 1);
    st[0] = m;
    for (std::size_t j = 0; j < in.size(); ++j)
      st[j + 1] = m == kNegInf || in[j] == kNegInf ? 0.0 : std::exp((tau.b / tau.a) * in[j] - m);
    return st;
  }

  // Outer state: ln y with y = 2^{-tau2 w2}.
  std::vector<double> outer_state(double e) const {
    const double w = inv_p[1] + sign * e;
    return {-tau.b * w * std::log(2.0)};
  }

  double combine(const std::vector<double>& st, const std::vector<double>& out) const {
    if (st[0] == kNegInf) return kNegInf;
    const double ly = out[0], y = std::exp(ly);
    double acc = 0.0;
    for (std::size_t j = st.size() - 1; j >= 1; --j) acc = acc * y + st[j];
    if (acc > 0 && std::isfinite(acc)) return (st[0] + std::log(acc)) / tau.b;
    std::vector<double> terms(st.size() - 1);
    for (std::size_t j = 1; j < st.size(); ++j)
      terms[j - 1] = st[j] > 0 ? std::log(st[j]) + static_cast<double>(j - 1) * ly : kNegInf;
    return (st[0] + log_sum_exp(terms)) / tau.b;
  }

  double log_value(Pair2 e, Pair2 theta) const {
    return theta[0] * std::log(e[0]) + theta[1] * std::log(e[1]) + combine(inner_state(e[0]), outer_state(e[1]));
  }
};

}  // namespace

NormResult dyadic_grand_norm(const Rearrangement2D& r, const GrandParams& gp, const ParamPair& tau,
                             const DyadicTruncation& trunc, const SearchConfig& k_search) {
  const GrandParams g = validate(gp);
  trunc.validate();
  k_search.validate();
  if (g.p.any_infinite()) fail(Errc::InvalidArgument, "dyadic form needs finite p");
  if (tau.any_infinite() || !(tau.a > 0 && tau.b > 0)) fail(Errc::InvalidArgument, "tau must be finite and positive");

  const std::size_t depth = static_cast<std::size_t>(trunc.depth);
  const std::size_t deep = 2 * depth;
  Matrix log_r(deep + 1, deep + 1);
  for (std::size_t j2 = 0; j2 <= deep; ++j2)
    for (std::size_t j1 = 0; j1 <= deep; ++j1) {
      const double v = r.log_evaluate(std::ldexp(1.0, -static_cast<int>(j1)), std::ldexp(1.0, -static_cast<int>(j2)));
      if (v == kPosInf || std::isnan(v)) fail(Errc::NonFiniteTerm, "rearrangement is not finite on the dyadic lattice");
      log_r(j2, j1) = v;
    }

  Matrix shallow(depth + 1, depth + 1);
  for (std::size_t j2 = 0; j2 <= depth; ++j2)
    for (std::size_t j1 = 0; j1 <= depth; ++j1) shallow(j2, j1) = log_r(j2, j1);

  const double sign = g.regime == Regime::NegTheta ? -1.0 : 1.0;
  const DyadicObjective at_depth{shallow, depth, tau, g.p.reciprocal(), sign};
  const DyadicObjective at_deep{log_r, deep, tau, g.p.reciprocal(), sign};
  const Pair2 theta{g.theta.t1, g.theta.t2};

  SeparableObjective obj;
  obj.state1 = [&](double e) { return at_depth.inner_state(e); };
  obj.state2 = [&](double e) { return at_depth.outer_state(e); };
  obj.combine = [&](const std::vector<double>& a, const std::vector<double>& b) { return at_depth.combine(a, b); };
  obj.theta = theta;
  const SearchOutcome out = extremize(obj, {1.0, 1.0}, g.regime != Regime::NegTheta, k_search);

  NormResult res;
  res.extremal_eps = out.arg;
  res.value = std::exp(out.log_value);
  res.diagnostics.nodes = depth + 1;
  res.diagnostics.t_min = std::ldexp(1.0, -static_cast<int>(depth));
  res.diagnostics.search_evaluations = out.evaluations;
  if (!std::isfinite(out.log_value)) {
    res.converged = out.log_value == kNegInf;
    res.diagnostics.tail = res.converged ? 0.0 : kPosInf;
    return res;
  }
  const double deeper = at_deep.log_value(out.arg, theta);
  res.diagnostics.tail = std::isfinite(deeper) ? std::fabs(std::expm1(deeper - out.log_value)) : kPosInf;
  res.converged = res.diagnostics.tail <= kDyadicTailTol;
  if (!res.converged) res.diagnostics.note = "sum not settled between depth M and 2M";
  return res;
}

}  // namespace gl
