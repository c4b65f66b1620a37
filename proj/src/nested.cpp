#include <algorithm>
#include <cmath>
#include <limits>

#include "gl/error.hpp"
#include "gl/logspace.hpp"
#include "gl/quadrature.hpp"

namespace gl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

// Log-sum-exp over the terms a[i] + b[i] with -inf entries on either side skipped.
template <class F>
double lse_skip(std::size_t n, F term) {
  double m = kNegInf;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, term(i));
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = term(i);
    if (v > kNegInf) s += std::exp(v - m);
  }
  return m + std::log(s);
}

}  // namespace

CellModel cell_model(const Rearrangement2D& r) {
  CellModel m;
  if (const StepGrid* s = r.step_data()) {
    m.axis1.edges = s->edges1;
    m.axis2.edges = s->edges2;
    m.log_values = Matrix(s->values.rows(), s->values.cols());
    for (std::size_t b2 = 0; b2 < s->values.rows(); ++b2)
      for (std::size_t b1 = 0; b1 < s->values.cols(); ++b1) m.log_values(b2, b1) = std::log(s->values(b2, b1));
    return m;
  }
  const PowerLogParams& pl = *r.power_log_data();
  m.axis1 = AxisProfile{{1.0}, pl.alpha[0], pl.beta[0]};
  m.axis2 = AxisProfile{{1.0}, pl.alpha[1], pl.beta[1]};
  m.log_values = Matrix(1, 1, std::log(pl.scale));
  return m;
}

NestedEvaluator::NestedEvaluator(const CellModel& model, const ParamPair& q, const LogGrid& grid, AxisFactor f1,
                                 AxisFactor f2)
    : log_values_(model.log_values),
      q_(q),
      weak_(q.all_infinite()),
      ax1_(model.axis1, f1, grid),
      ax2_(model.axis2, f2, grid) {
  if (q.any_infinite() && !weak_) fail(Errc::MixedInfiniteQ, "q mixes finite and infinite components");
  if (!(q.a > 0 && q.b > 0)) fail(Errc::NonPositiveExponent, "q must be positive");
  if (log_values_.rows() != ax2_.cells() || log_values_.cols() != ax1_.cells())
    fail(Errc::ShapeMismatch, "cell values do not match the axis partitions");
}

std::vector<double> NestedEvaluator::inner_sums(double w1, bool with_tail) const {
  std::vector<double> s(ax1_.cells());
  if (weak_) {
    ax1_.log_sups(w1, s);
    return s;
  }
  ax1_.log_integrals(q_.a * w1, q_.a, s);
  if (with_tail && ax1_.floor_cell() < s.size()) {
    double& f = s[ax1_.floor_cell()];
    f = log_add(f, ax1_.log_floor_tail(q_.a * w1, q_.a));
  }
  return s;
}

std::vector<double> NestedEvaluator::outer_sums(double w2, bool with_tail) const {
  std::vector<double> s(ax2_.cells());
  if (weak_) {
    ax2_.log_sups(w2, s);
    return s;
  }
  ax2_.log_integrals(q_.b * w2, q_.b, s);
  if (with_tail && ax2_.floor_cell() < s.size()) {
    double& f = s[ax2_.floor_cell()];
    f = log_add(f, ax2_.log_floor_tail(q_.b * w2, q_.b));
  }
  return s;
}

std::vector<double> NestedEvaluator::inner_with(std::span<const double> s1) const {
  const std::size_t n2 = log_values_.rows(), n1 = log_values_.cols();
  std::vector<double> in(n2, kNegInf);
  for (std::size_t b2 = 0; b2 < n2; ++b2) {
    auto row = log_values_.row(b2);
    auto term = [&](std::size_t b1) {
      if (row[b1] == kNegInf || s1[b1] == kNegInf) return kNegInf;
      return weak_ ? row[b1] + s1[b1] : q_.a * row[b1] + s1[b1];
    };
    if (weak_) {
      for (std::size_t b1 = 0; b1 < n1; ++b1) in[b2] = std::max(in[b2], term(b1));
    } else {
      in[b2] = lse_skip(n1, term);
    }
  }
  return in;
}

std::vector<double> NestedEvaluator::inner(double w1) const {
  auto in = inner_with(inner_sums(w1, false));
  if (weak_ ? ax1_.sup_diverges(w1) : ax1_.integral_diverges(q_.a * w1, q_.a)) {
    const std::size_t f = ax1_.floor_cell();
    for (std::size_t b2 = 0; b2 < in.size(); ++b2)
      if (log_values_(b2, f) > kNegInf) in[b2] = kPosInf;
  }
  return in;
}

std::vector<double> NestedEvaluator::outer(double w2) const {
  auto out = outer_sums(w2, false);
  if (weak_ ? ax2_.sup_diverges(w2) : ax2_.integral_diverges(q_.b * w2, q_.b)) out[ax2_.floor_cell()] = kPosInf;
  return out;
}

double NestedEvaluator::combine(std::span<const double> in, std::span<const double> out) const {
  if (in.size() != out.size()) fail(Errc::ShapeMismatch, "inner/outer size mismatch");
  auto term = [&](std::size_t b2) {
    if (in[b2] == kNegInf || out[b2] == kNegInf) return kNegInf;
    return weak_ ? in[b2] + out[b2] : (q_.b / q_.a) * in[b2] + out[b2];
  };
  if (weak_) {
    double m = kNegInf;
    for (std::size_t b2 = 0; b2 < in.size(); ++b2) m = std::max(m, term(b2));
    return m;
  }
  return lse_skip(in.size(), term) / q_.b;
}

double NestedEvaluator::log_value(double w1, double w2) const { return combine(inner(w1), outer(w2)); }

bool NestedEvaluator::diverges(double w1, double w2) const {
  const bool d1 = weak_ ? ax1_.sup_diverges(w1) : ax1_.integral_diverges(q_.a * w1, q_.a);
  const bool d2 = weak_ ? ax2_.sup_diverges(w2) : ax2_.integral_diverges(q_.b * w2, q_.b);
  if (d1) {
    const std::size_t f = ax1_.floor_cell();
    for (std::size_t b2 = 0; b2 < log_values_.rows(); ++b2)
      if (log_values_(b2, f) > kNegInf) return true;
  }
  if (d2) {
    const std::size_t f = ax2_.floor_cell();
    for (std::size_t b1 = 0; b1 < log_values_.cols(); ++b1)
      if (log_values_(f, b1) > kNegInf) return true;
  }
  return false;
}

double NestedEvaluator::tail_fraction(double w1, double w2) const {
  if (!weak_) {
    const double base = combine(inner_with(inner_sums(w1, false)), outer_sums(w2, false));
    const double ext = combine(inner_with(inner_sums(w1, true)), outer_sums(w2, true));
    if (ext == kNegInf) return 0.0;
    if (base == kNegInf || ext == kPosInf || base == kPosInf) return kPosInf;
    return std::expm1(ext - base);
  }
  std::vector<double> s1(ax1_.cells()), s2(ax2_.cells());
  std::vector<char> f1, f2;
  ax1_.log_sups(w1, s1, &f1);
  ax2_.log_sups(w2, s2, &f2);
  double best = kNegInf;
  for (std::size_t b2 = 0; b2 < s2.size(); ++b2)
    for (std::size_t b1 = 0; b1 < s1.size(); ++b1)
      if (log_values_(b2, b1) > kNegInf && s1[b1] > kNegInf && s2[b2] > kNegInf)
        best = std::max(best, log_values_(b2, b1) + s1[b1] + s2[b2]);
  if (!std::isfinite(best)) return best == kPosInf ? kPosInf : 0.0;
  const double slack = 1e-12 * std::max(1.0, std::fabs(best));
  for (std::size_t b2 = 0; b2 < s2.size(); ++b2)
    for (std::size_t b1 = 0; b1 < s1.size(); ++b1) {
      if (!(f1[b1] || f2[b2]) || log_values_(b2, b1) == kNegInf) continue;
      if (log_values_(b2, b1) + s1[b1] + s2[b2] >= best - slack) return kPosInf;
    }
  return 0.0;
}

}  // namespace gl
