#include "gl/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "gl/error.hpp"

namespace gl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

// Larger is better; NaN never wins.
double score(double v, bool maximize) { return std::isnan(v) ? std::nan("") : (maximize ? v : -v); }

bool better(double s, double best) { return !std::isnan(s) && (std::isnan(best) || s > best); }

struct Best {
  double x = 0.0;  // log eps
  double s = std::nan("");
};

// Golden-section on [a, b] for the score g; returns the best point seen
// (including `start`) and counts evaluations.
Best golden(const std::function<double(double)>& g, double a, double b, Best start, std::size_t iterations,
            double tol, std::size_t& evals) {
  Best best = start;
  auto eval = [&](double x) {
    const double s = g(x);
    ++evals;
    if (better(s, best.s)) best = {x, s};
    return std::isnan(s) ? kNegInf : s;
  };
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = eval(c), fd = eval(d);
  for (std::size_t it = 0; it < iterations && (b - a) > tol * std::max(1.0, std::fabs(a)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = eval(d);
    }
  }
  return best;
}

}  // namespace

void SearchConfig::validate() const {
  if (coarse_nodes < 16) fail(Errc::InvalidArgument, "search needs at least 16 coarse nodes per axis");
  if (iterations < 1) fail(Errc::InvalidArgument, "search needs at least one refinement iteration");
  if (!(floor > 0 && floor < 1)) fail(Errc::InvalidArgument, "search floor must lie in (0,1)");
  if (!(rel_tol > 0)) fail(Errc::InvalidArgument, "search rel_tol must be positive");
}

SearchConfig SearchConfig::refined() const {
  SearchConfig c = *this;
  c.coarse_nodes = 2 * coarse_nodes - 1;
  return c;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = hi;
    return out;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

SearchOutcome extremize_1d(const std::function<double(double)>& f, double lo, double hi, bool maximize,
                           const SearchConfig& cfg) {
  cfg.validate();
  if (!(lo > 0 && hi >= lo)) fail(Errc::InvalidArgument, "search interval must satisfy 0 < lo <= hi");
  SearchOutcome out;
  const auto xs = log_spaced(lo, hi, lo == hi ? 1 : cfg.coarse_nodes);
  Best best;
  std::size_t ib = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = f(xs[i]);
    out.coarse1.push_back(xs[i]);
    out.coarse_values.push_back(v);
    const double s = score(v, maximize);
    if (better(s, best.s)) {
      best = {std::log(xs[i]), s};
      ib = i;
    }
  }
  out.evaluations = xs.size();
  if (std::isnan(best.s)) fail(Errc::SearchFailed, "objective is NaN on the whole search grid");
  if (std::isfinite(best.s) && xs.size() > 1) {
    const double a = std::log(xs[ib ? ib - 1 : 0]), b = std::log(xs[std::min(ib + 1, xs.size() - 1)]);
    auto g = [&](double x) { return score(f(std::exp(x)), maximize); };
    best = golden(g, a, b, best, cfg.iterations, cfg.rel_tol, out.evaluations);
  }
  out.arg = {std::exp(best.x), 0.0};
  out.log_value = maximize ? best.s : -best.s;
  return out;
}

SearchOutcome extremize(const SeparableObjective& obj, Pair2 hi, bool maximize, const SearchConfig& cfg) {
  cfg.validate();
  for (double h : hi)
    if (!(h > 0)) fail(Errc::InvalidArgument, "search box upper limits must be positive");
  SearchOutcome out;
  std::array<std::vector<double>, 2> grid;
  for (int a = 0; a < 2; ++a) {
    const double lo = std::min(cfg.floor, hi[a]);
    grid[a] = log_spaced(lo, hi[a], lo == hi[a] ? 1 : cfg.coarse_nodes);
  }
  out.coarse1 = grid[0];
  out.coarse2 = grid[1];

  std::vector<std::vector<double>> s1, s2;
  for (double e : grid[0]) s1.push_back(obj.state1(e));
  for (double e : grid[1]) s2.push_back(obj.state2(e));
  auto value = [&](double e1, double e2, const std::vector<double>& a, const std::vector<double>& b) {
    const double c = obj.combine(a, b);
    double w = 0.0;
    if (obj.theta[0] != 0) w += obj.theta[0] * std::log(e1);
    if (obj.theta[1] != 0) w += obj.theta[1] * std::log(e2);
    return c + w;
  };

  Best best;
  std::size_t i1 = 0, i2 = 0;
  out.coarse_values.reserve(grid[0].size() * grid[1].size());
  for (std::size_t j = 0; j < grid[1].size(); ++j)
    for (std::size_t i = 0; i < grid[0].size(); ++i) {
      const double v = value(grid[0][i], grid[1][j], s1[i], s2[j]);
      out.coarse_values.push_back(v);
      const double s = score(v, maximize);
      if (better(s, best.s)) {
        best.s = s;
        i1 = i;
        i2 = j;
      }
    }
  out.evaluations = out.coarse_values.size();
  if (std::isnan(best.s)) fail(Errc::SearchFailed, "objective is NaN on the whole search grid");

  Pair2 arg{grid[0][i1], grid[1][i2]};
  std::vector<double> st1 = s1[i1], st2 = s2[i2];
  if (std::isfinite(best.s)) {
    std::array<double, 2> span{};
    for (int a = 0; a < 2; ++a)
      span[a] = grid[a].size() > 1 ? std::log(grid[a][1] / grid[a][0]) : 0.0;
    for (std::size_t pass = 0; pass < cfg.passes; ++pass) {
      const double before = best.s;
      for (int a = 0; a < 2; ++a) {
        if (span[a] == 0.0) continue;
        const double lo = std::log(grid[a].front()), top = std::log(grid[a].back());
        const double x0 = std::log(arg[a]);
        const double l = std::max(lo, x0 - span[a]), r = std::min(top, x0 + span[a]);
        std::vector<double> best_state = a == 0 ? st1 : st2;
        double running = best.s;
        auto g = [&](double x) {
          const double e = std::exp(x);
          auto st = a == 0 ? obj.state1(e) : obj.state2(e);
          const double v = a == 0 ? value(e, arg[1], st, st2) : value(arg[0], e, st1, st);
          const double s = score(v, maximize);
          if (better(s, running)) {
            running = s;
            best_state = std::move(st);
          }
          return s;
        };
        Best b = golden(g, l, r, {x0, best.s}, cfg.iterations, cfg.rel_tol, out.evaluations);
        if (b.x != x0) {
          arg[a] = std::exp(b.x);
          best.s = b.s;
          (a == 0 ? st1 : st2) = std::move(best_state);
        }
      }
      if (!(best.s - before > cfg.rel_tol * std::max(1.0, std::fabs(before)))) break;
    }
  }
  out.arg = arg;
  out.log_value = maximize ? best.s : -best.s;
  return out;
}

}  // namespace gl
