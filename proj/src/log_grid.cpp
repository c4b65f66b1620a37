#include <cmath>

#include "gl/error.hpp"
#include "gl/quadrature.hpp"

namespace gl {

const char* to_string(Rule r) noexcept { return r == Rule::Trapezoid ? "Trapezoid" : "Midpoint"; }

void LogGrid::validate() const {
  if (!(t_min > 0.0 && t_min < 1.0)) fail(Errc::InvalidArgument, "t_min must lie in (0,1)");
  if (!(t_max > t_min && t_max <= 1.0)) fail(Errc::InvalidArgument, "t_max must lie in (t_min, 1]");
  if (nodes < 16) fail(Errc::InvalidArgument, "need at least 16 nodes per axis");
  if (!(rel_tol > 0)) fail(Errc::InvalidArgument, "rel_tol must be positive");
}

double LogGrid::u_lo() const { return -std::log(t_max); }
double LogGrid::u_hi() const { return -std::log(t_min); }
double LogGrid::step() const { return (u_hi() - u_lo()) / static_cast<double>(nodes - 1); }

std::vector<double> LogGrid::u_nodes() const {
  validate();
  std::vector<double> u(nodes);
  const double lo = u_lo(), h = step();
  for (std::size_t k = 0; k < nodes; ++k) u[k] = lo + h * static_cast<double>(k);
  u.back() = u_hi();
  return u;
}

std::vector<double> LogGrid::t_nodes() const {
  auto u = u_nodes();
  std::vector<double> t(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) t[u.size() - 1 - k] = std::exp(-u[k]);
  t.front() = t_min;
  t.back() = t_max;
  return t;
}

LogGrid LogGrid::doubled() const {
  LogGrid g = *this;
  g.nodes = 2 * nodes - 1;
  return g;
}

LogGrid LogGrid::with_t_max(double t) const {
  LogGrid g = *this;
  g.t_max = t;
  g.validate();
  return g;
}

std::vector<LogGrid> doubling_schedule(const LogGrid& base, std::size_t levels) {
  base.validate();
  std::vector<LogGrid> out;
  LogGrid g = base;
  for (std::size_t i = 0; i < levels; ++i) {
    out.push_back(g);
    g = g.doubled();
  }
  return out;
}

void DyadicTruncation::validate() const {
  if (depth < 8) fail(Errc::InvalidArgument, "dyadic truncation depth must be >= 8");
}

}  // namespace gl
