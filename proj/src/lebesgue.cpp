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

bool has_floor_mass(const Profile1D& f, const AxisIntegrator& ax) {
  return ax.floor_cell() < ax.cells() && f.log_values[ax.floor_cell()] > kNegInf;
}

}  // namespace

Profile1D Profile1D::constant(double c) {
  if (!std::isfinite(c) || c < 0) fail(Errc::NegativeValue, "constant must be finite and >= 0");
  Profile1D f;
  f.log_values = {std::log(c)};
  return f;
}

Profile1D Profile1D::power(double alpha, double beta, double scale) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) fail(Errc::InvalidArgument, "exponents must be finite");
  if (!std::isfinite(scale) || scale < 0) fail(Errc::NegativeValue, "scale must be finite and >= 0");
  if (alpha < 0 || beta < 0) fail(Errc::NonMonotone, "t^-alpha |ln t|^beta needs alpha, beta >= 0");
  Profile1D f;
  f.axis.alpha = alpha;
  f.axis.beta = beta;
  f.log_values = {std::log(scale)};
  return f;
}

Profile1D Profile1D::step(std::vector<double> edges, const std::vector<double>& values) {
  if (edges.size() != values.size()) fail(Errc::ShapeMismatch, "one value per cell");
  if (edges.empty() || edges.back() != 1.0) fail(Errc::InvalidArgument, "edges must end at 1");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!(edges[i] > (i ? edges[i - 1] : 0.0))) fail(Errc::InvalidArgument, "edges must increase in (0,1]");
    if (!std::isfinite(values[i]) || values[i] < 0) fail(Errc::NegativeValue, "values must be finite and >= 0");
    if (i && values[i] > values[i - 1]) fail(Errc::NonMonotone, "step values must not increase with t");
  }
  Profile1D f;
  f.axis.edges = std::move(edges);
  f.log_values.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) f.log_values[i] = std::log(values[i]);
  return f;
}

double Profile1D::evaluate(double t) const {
  if (!(t > 0 && t <= 1)) fail(Errc::OutOfDomain, "t must lie in (0,1]");
  auto it = std::lower_bound(axis.edges.begin(), axis.edges.end(), t);
  const double lv = log_values[static_cast<std::size_t>(it - axis.edges.begin())];
  if (lv == kNegInf) return 0.0;
  double v = lv - axis.alpha * std::log(t);
  if (axis.beta != 0.0) v += axis.beta * std::log(std::fabs(std::log(t)));
  return std::exp(v);
}

NormResult grand_lebesgue_1d(const Profile1D& f, double p, double theta, LebesgueForm form, const LogGrid& grid,
                             const SearchConfig& search) {
  if (!(p > 1) || !std::isfinite(p)) fail(Errc::InvalidArgument, "p must be finite and > 1");
  if (!(theta > 0) || !std::isfinite(theta)) fail(Errc::InvalidArgument, "theta must be finite and positive");
  if (f.log_values.size() != f.axis.edges.size()) fail(Errc::ShapeMismatch, "one value per cell");
  search.validate();
  const AxisIntegrator ax(f.axis, AxisFactor::none(), grid);
  const bool floor_mass = has_floor_mass(f, ax);

  NormResult res;
  res.diagnostics.nodes = grid.nodes;
  res.diagnostics.t_min = grid.t_min;
  res.diagnostics.t_max = grid.t_max;

  std::vector<double> li(ax.cells());
  auto log_norm = [&](double s, bool with_tail) {
    if (floor_mass && ax.integral_diverges(1.0, s)) return kPosInf;
    ax.log_integrals(1.0, s, li);
    if (with_tail && ax.floor_cell() < li.size())
      li[ax.floor_cell()] = log_add(li[ax.floor_cell()], ax.log_floor_tail(1.0, s));
    for (std::size_t b = 0; b < li.size(); ++b)
      li[b] = f.log_values[b] == kNegInf ? kNegInf : li[b] + s * f.log_values[b];
    return log_sum_exp(li) / s;
  };

  if (form == LebesgueForm::EpsSup) {
    auto objective = [&](double e) { return theta * std::log(e) + log_norm(p - e, true); };
    const double hi = p - 1.0;
    const SearchOutcome out = extremize_1d(objective, std::min(search.floor, hi), hi, true, search);
    res.extremal_eps = Pair2{out.arg[0], 0.0};
    res.diagnostics.search_evaluations = out.evaluations;
    res.value = std::exp(out.log_value);
    if (out.log_value == kPosInf) {
      res.converged = false;
      res.diagnostics.tail = kPosInf;
      res.diagnostics.note = "diverges as t -> 0";
      return res;
    }
    if (out.log_value == kNegInf) return res;
    const double s = p - out.arg[0];
    const double ext = log_norm(s, true);
    const double base = log_norm(s, false);
    res.diagnostics.tail = std::isfinite(ext) ? std::expm1(s * (ext - base)) : kPosInf;
    res.converged = res.diagnostics.tail <= grid.rel_tol;
    return res;
  }

  const auto cum = ax.log_cumulative(1.0, p, f.log_values);
  const auto& u = ax.nodes();
  double best = kNegInf;
  std::size_t arg = 0;
  for (std::size_t k = 1; k < u.size(); ++k) {
    if (cum[k] == kNegInf) continue;
    const double v = -(theta / p) * std::log1p(u[k]) + cum[k] / p;
    if (v > best) {
      best = v;
      arg = k;
    }
  }
  res.value = std::exp(best);
  res.diagnostics.search_evaluations = u.size() - 1;
  if (best == kNegInf) return res;
  res.diagnostics.note = "s* = " + std::to_string(std::exp(-u[arg]));
  // A maximum on the last node means the expression may still grow below t_min.
  if (arg + 1 == u.size() && floor_mass) {
    res.converged = false;
    res.diagnostics.tail = kPosInf;
  }
  return res;
}

}  // namespace gl
