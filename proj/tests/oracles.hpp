#pragma once

// Independent reference computations for the test suites. Nothing here
// calls into the library's numerical code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

/// Exponential integral E1(x) for x > 0 by its convergent power series.
inline double expint_e1(double x) {
  constexpr double euler_gamma = 0.57721566490153286061;
  double sum = 0.0, term = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -x / k;
    sum += term / k;
    if (std::fabs(term / k) < 1e-18) break;
  }
  return -euler_gamma - std::log(x) - sum;
}

/// Brute-force two-stage sort: rows of a vector-of-vectors (row = x2 index)
/// sorted decreasingly by selection, then columns.
inline std::vector<std::vector<double>> two_stage_selection_sort(std::vector<std::vector<double>> m) {
  auto select_sort = [](std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::size_t best = i;
      for (std::size_t j = i + 1; j < v.size(); ++j)
        if (v[j] > v[best]) best = j;
      std::swap(v[i], v[best]);
    }
  };
  for (auto& row : m) select_sort(row);
  if (m.empty()) return m;
  for (std::size_t c = 0; c < m[0].size(); ++c) {
    std::vector<double> col;
    for (auto& row : m) col.push_back(row[c]);
    select_sort(col);
    for (std::size_t r = 0; r < m.size(); ++r) m[r][c] = col[r];
  }
  return m;
}

/// Dense scan of a 1-D function on a log-spaced grid over
/// [lo, hi], followed by ternary polishing around the best node.
inline double dense_max(const std::function<double(double)>& f, double lo, double hi, int n = 200001) {
  double best = -INFINITY, arg = lo;
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) {
    const double x = std::exp(a + (b - a) * i / (n - 1));
    const double v = f(x);
    if (v > best) {
      best = v;
      arg = x;
    }
  }
  // Refine by ternary search in the neighbouring cell.
  double l = std::max(lo, arg * std::exp(-(b - a) / (n - 1))), r = std::min(hi, arg * std::exp((b - a) / (n - 1)));
  for (int it = 0; it < 200; ++it) {
    const double m1 = l + (r - l) / 3, m2 = r - (r - l) / 3;
    if (f(m1) < f(m2)) l = m1; else r = m2;
  }
  return std::max(best, f(0.5 * (l + r)));
}

inline double dense_min(const std::function<double(double)>& f, double lo, double hi, int n = 200001) {
  return -dense_max([&](double x) { return -f(x); }, lo, hi, n);
}

/// Simpson's rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 200000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

}  // namespace oracle
