#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace gl {

/// log(e^a + e^b) without overflow; -inf is the additive identity.
inline double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  if (a == std::numeric_limits<double>::infinity() || b == std::numeric_limits<double>::infinity())
    return std::numeric_limits<double>::infinity();
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

/// log(sum_i e^{x_i}); -inf for an empty or all -inf input, +inf if any term is +inf.
inline double log_sum_exp(std::span<const double> xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

/// log of int_{ua}^{ub} e^{-c u} du for ua <= ub (any sign of c).
inline double log_exp_integral(double c, double ua, double ub) {
  const double d = ub - ua;
  if (!(d > 0)) return -std::numeric_limits<double>::infinity();
  const double s = std::fabs(c);
  const double base = c >= 0 ? -c * ua : -c * ub;
  if (s * d < 1e-300) return base + std::log(d);
  return base + std::log(-std::expm1(-s * d) / s);
}

/// Product-trapezoid weights on one interval of width h against e^{-c u}:
///   int_0^h e^{-c v} (1 - v/h) dv = h * phi0(c h),
///   int_0^h e^{-c v} (v/h) dv     = h * phi1(c h).
inline double trapezoid_phi0(double x) {
  if (std::fabs(x) < 1e-2) return 0.5 + x * (-1.0 / 6 + x * (1.0 / 24 + x * (-1.0 / 120 + x / 720)));
  return (x + std::expm1(-x)) / (x * x);
}

inline double trapezoid_phi1(double x) {
  if (std::fabs(x) < 1e-2) return 0.5 + x * (-1.0 / 3 + x * (1.0 / 8 + x * (-1.0 / 30 + x / 144)));
  return (1.0 - (1.0 + x) * std::exp(-x)) / (x * x);
}

}  // namespace gl
