#include <cfloat>
#include <cmath>
#include <limits>

#include "gl/error.hpp"
#include "gl/logspace.hpp"
#include "gl/quadrature.hpp"

namespace gl {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double dyadic_nested_log_sum(const Matrix& log_terms, const ParamPair& tau) {
  if (tau.any_infinite() || !(tau.a > 0 && tau.b > 0)) fail(Errc::InvalidArgument, "tau must be finite and positive");
  std::vector<double> inner(log_terms.cols());
  std::vector<double> outer(log_terms.rows());
  for (std::size_t j2 = 0; j2 < log_terms.rows(); ++j2) {
    auto row = log_terms.row(j2);
    for (std::size_t j1 = 0; j1 < row.size(); ++j1) inner[j1] = row[j1] == kNegInf ? kNegInf : tau.a * row[j1];
    const double s = log_sum_exp(inner);
    outer[j2] = s == kNegInf ? kNegInf : (tau.b / tau.a) * s;
  }
  return log_sum_exp(outer) / tau.b;
}

double dyadic_nested_sum(const std::function<double(int, int)>& g, const ParamPair& tau,
                         const DyadicTruncation& trunc) {
  trunc.validate();
  const auto n = static_cast<std::size_t>(trunc.depth) + 1;
  Matrix lt(n, n);
  for (std::size_t j2 = 0; j2 < n; ++j2)
    for (std::size_t j1 = 0; j1 < n; ++j1) {
      const int m1 = -static_cast<int>(j1), m2 = -static_cast<int>(j2);
      const double v = g(m1, m2);
      if (!std::isfinite(v) || v < 0)
        fail(Errc::NonFiniteTerm,
             "dyadic term at (" + std::to_string(m1) + "," + std::to_string(m2) + ") is not a finite value >= 0");
      lt(j2, j1) = v == 0 ? kNegInf : std::log(v);
    }
  const double lv = dyadic_nested_log_sum(lt, tau);
  if (lv > std::log(DBL_MAX)) fail(Errc::Overflow, "dyadic sum exceeds the double range");
  return std::exp(lv);
}

}  // namespace gl
