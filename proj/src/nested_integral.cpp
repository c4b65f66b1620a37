#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

#include "gl/error.hpp"
#include "gl/logspace.hpp"
#include "gl/quadrature.hpp"

namespace gl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Sample positions along one axis and the log quadrature weight of each
/// sample against e^{-c u} du.
struct AxisSamples {
  std::vector<double> t;
  std::vector<double> log_w;
};

AxisSamples axis_samples(const LogGrid& grid, const std::vector<double>& knots_t, double c) {
  std::vector<double> u = grid.u_nodes();
  const double lo = grid.u_lo(), hi = grid.u_hi();
  std::vector<double> knots;
  for (double t : knots_t) {
    if (!(t > 0)) continue;
    const double k = -std::log(t);
    if (k > lo && k < hi) knots.push_back(k);
  }
  u.insert(u.end(), knots.begin(), knots.end());
  std::sort(u.begin(), u.end());
  std::vector<double> nodes;
  for (double x : u)
    if (nodes.empty() || x - nodes.back() > 1e-13 * std::max(1.0, x)) nodes.push_back(x);
  nodes.back() = hi;
  std::sort(knots.begin(), knots.end());
  auto is_knot = [&](double x) {
    auto it = std::lower_bound(knots.begin(), knots.end(), x - 1e-13 * std::max(1.0, x));
    return it != knots.end() && std::fabs(*it - x) <= 1e-13 * std::max(1.0, x);
  };

  AxisSamples s;
  const std::size_t n = nodes.size();
  if (grid.rule == Rule::Midpoint) {
    for (std::size_t k = 0; k + 1 < n; ++k) {
      s.t.push_back(std::exp(-0.5 * (nodes[k] + nodes[k + 1])));
      s.log_w.push_back(log_exp_integral(c, nodes[k], nodes[k + 1]));
    }
    return s;
  }
  // Trapezoid: one sample per node, two (one per side) at knots so a jump in
  // the sampled factor never leaks across it.
  for (std::size_t k = 0; k < n; ++k) {
    const bool two = k > 0 && k + 1 < n && is_knot(nodes[k]);
    double wl = kNegInf, wr = kNegInf;  // weight from the interval on the left / right of node k
    if (k > 0) {
      const double h = nodes[k] - nodes[k - 1];
      wl = std::log(h) - c * nodes[k - 1] + std::log(trapezoid_phi1(c * h));
    }
    if (k + 1 < n) {
      const double h = nodes[k + 1] - nodes[k];
      wr = std::log(h) - c * nodes[k] + std::log(trapezoid_phi0(c * h));
    }
    if (two) {
      const double eta = 1e-9 * std::min(nodes[k] - nodes[k - 1], nodes[k + 1] - nodes[k]);
      s.t.push_back(std::exp(-(nodes[k] - eta)));
      s.log_w.push_back(wl);
      s.t.push_back(std::exp(-(nodes[k] + eta)));
      s.log_w.push_back(wr);
    } else {
      s.t.push_back(std::exp(-nodes[k]));
      s.log_w.push_back(log_add(wl, wr));
    }
  }
  return s;
}

double log_sample(const std::function<double(double, double)>& f, double t1, double t2) {
  const double v = f(t1, t2);
  if (std::isnan(v) || std::isinf(v))
    fail(Errc::NonFiniteIntegrand, "integrand is not finite at (" + std::to_string(t1) + "," + std::to_string(t2) + ")");
  if (v < 0) fail(Errc::NegativeValue, "integrand is negative at (" + std::to_string(t1) + "," + std::to_string(t2) + ")");
  return v == 0 ? kNegInf : std::log(v);
}

}  // namespace

double nested_log_integral_log(const WeightedIntegrand& h, const ParamPair& q, const LogGrid& grid) {
  grid.validate();
  if (q.any_infinite() || !(q.a > 0 && q.b > 0))
    fail(Errc::InvalidArgument, "nested integral needs finite positive q");
  if (!h.value) fail(Errc::InvalidArgument, "integrand has no value function");
  const AxisSamples s1 = axis_samples(grid, h.knots1, q.a * h.weight[0]);
  const AxisSamples s2 = axis_samples(grid, h.knots2, q.b * h.weight[1]);

  std::vector<double> inner_terms(s1.t.size());
  std::vector<double> outer_terms(s2.t.size());
  for (std::size_t j = 0; j < s2.t.size(); ++j) {
    for (std::size_t i = 0; i < s1.t.size(); ++i) {
      const double lv = log_sample(h.value, s1.t[i], s2.t[j]);
      inner_terms[i] = lv == kNegInf ? kNegInf : s1.log_w[i] + q.a * lv;
    }
    const double inner = log_sum_exp(inner_terms);
    outer_terms[j] = inner == kNegInf ? kNegInf : s2.log_w[j] + (q.b / q.a) * inner;
  }
  return log_sum_exp(outer_terms) / q.b;
}

double nested_log_integral(const WeightedIntegrand& h, const ParamPair& q, const LogGrid& grid) {
  const double lv = nested_log_integral_log(h, q, grid);
  if (lv > std::log(DBL_MAX)) fail(Errc::Overflow, "nested integral exceeds the double range");
  return std::exp(lv);
}

}  // namespace gl
