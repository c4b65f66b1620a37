#include "gl/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "gl/error.hpp"

namespace gl {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) fail(Errc::ShapeMismatch, "ragged matrix rows");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

GridFunction2D::GridFunction2D(Matrix values) : values_(std::move(values)) {
  if (values_.rows() == 0 || values_.cols() == 0) fail(Errc::ShapeMismatch, "grid function needs N1, N2 >= 1");
  for (double v : values_.data()) {
    if (!std::isfinite(v)) fail(Errc::NonFiniteValue, "grid value is not finite");
    if (v < 0) fail(Errc::NegativeValue, "grid value " + std::to_string(v) + " is negative");
  }
}

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::vector<double> uniform_edges(std::size_t n) {
  std::vector<double> e(n);
  for (std::size_t k = 0; k < n; ++k) e[k] = static_cast<double>(k + 1) / static_cast<double>(n);
  e.back() = 1.0;
  return e;
}

void check_edges(const std::vector<double>& e) {
  if (e.empty()) fail(Errc::ShapeMismatch, "step axis needs at least one cell");
  double prev = 0.0;
  for (double x : e) {
    if (!(x > prev)) fail(Errc::InvalidArgument, "cell edges must be strictly increasing in (0,1]");
    prev = x;
  }
  if (e.back() != 1.0) fail(Errc::InvalidArgument, "last cell edge must be 1");
}

bool step_monotone(const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c + 1 < m.cols() && m(r, c) < m(r, c + 1)) return false;
      if (r + 1 < m.rows() && m(r, c) < m(r + 1, c)) return false;
    }
  return true;
}

std::size_t cell_of(const std::vector<double>& edges, double t) {
  auto it = std::lower_bound(edges.begin(), edges.end(), t);
  return static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - edges.begin(), edges.size() - 1));
}

/// log of t^{-alpha} |ln t|^{beta}; beta = 0 gives no log factor even at t = 1.
double log_axis_factor(double t, double alpha, double beta) {
  double v = -alpha * std::log(t);
  if (beta != 0.0) v += beta * std::log(std::fabs(std::log(t)));
  return v;
}

/// One axis factor sampled on u = -ln t log-spaced over [1e-6, 60 ln 2] plus t = 1.
bool axis_factor_monotone(double alpha, double beta) {
  constexpr int n = 256;
  const double u_lo = 1e-6, u_hi = 60.0 * std::log(2.0);
  double prev = log_axis_factor(1.0, alpha, beta);  // value at t = 1
  if (std::isnan(prev)) return false;
  // Walk from t = 1 toward t = 0: values must not decrease.
  for (int k = 0; k < n; ++k) {
    double u = u_lo * std::pow(u_hi / u_lo, static_cast<double>(k) / (n - 1));
    double cur = log_axis_factor(std::exp(-u), alpha, beta);
    if (std::isnan(cur)) return false;
    if (cur < prev - 1e-12 * std::max(1.0, std::fabs(prev))) return false;
    prev = cur;
  }
  return true;
}

void check_domain(double t1, double t2) {
  if (!(t1 > 0 && t1 <= 1 && t2 > 0 && t2 <= 1))
    fail(Errc::OutOfDomain, "(" + num(t1) + "," + num(t2) + ") is outside (0,1]^2");
}

}  // namespace

Rearrangement2D Rearrangement2D::from_grid(Matrix sorted) {
  if (sorted.rows() == 0 || sorted.cols() == 0) fail(Errc::ShapeMismatch, "empty grid");
  auto e1 = uniform_edges(sorted.cols());
  auto e2 = uniform_edges(sorted.rows());
  return step(std::move(e1), std::move(e2), std::move(sorted));
}

Rearrangement2D Rearrangement2D::step(std::vector<double> edges1, std::vector<double> edges2, Matrix values) {
  check_edges(edges1);
  check_edges(edges2);
  if (values.cols() != edges1.size() || values.rows() != edges2.size())
    fail(Errc::ShapeMismatch, "step values do not match the cell edges");
  for (double v : values.data()) {
    if (!std::isfinite(v)) fail(Errc::NonFiniteValue, "step value is not finite");
    if (v < 0) fail(Errc::NegativeValue, "step value is negative");
  }
  if (!step_monotone(values)) fail(Errc::NonMonotone, "step values are not non-increasing in both variables");
  Rearrangement2D r;
  r.kind_ = RearrangementKind::Grid;
  r.step_ = StepGrid{std::move(edges1), std::move(edges2), std::move(values)};
  return r;
}

Rearrangement2D Rearrangement2D::constant(double c) {
  if (!std::isfinite(c)) fail(Errc::NonFiniteValue, "constant must be finite");
  if (c < 0) fail(Errc::NegativeValue, "constant must be non-negative");
  Rearrangement2D r;
  r.kind_ = RearrangementKind::Analytic;
  r.form_ = AnalyticForm::Constant;
  r.step_ = StepGrid{{1.0}, {1.0}, Matrix(1, 1, c)};
  return r;
}

Rearrangement2D Rearrangement2D::indicator(double a1, double a2, double height) {
  if (!(a1 > 0 && a1 <= 1 && a2 > 0 && a2 <= 1))
    fail(Errc::InvalidArgument, "indicator sides must lie in (0,1]");
  if (!std::isfinite(height)) fail(Errc::NonFiniteValue, "indicator height must be finite");
  if (height < 0) fail(Errc::NegativeValue, "indicator height must be non-negative");
  std::vector<double> e1 = a1 < 1 ? std::vector<double>{a1, 1.0} : std::vector<double>{1.0};
  std::vector<double> e2 = a2 < 1 ? std::vector<double>{a2, 1.0} : std::vector<double>{1.0};
  Matrix v(e2.size(), e1.size(), 0.0);
  v(0, 0) = height;
  Rearrangement2D r;
  r.kind_ = RearrangementKind::Analytic;
  r.form_ = AnalyticForm::Indicator;
  r.step_ = StepGrid{std::move(e1), std::move(e2), std::move(v)};
  return r;
}

Rearrangement2D Rearrangement2D::power_log(const PowerLogParams& params) {
  if (!std::isfinite(params.scale)) fail(Errc::NonFiniteValue, "power-log scale must be finite");
  if (params.scale < 0) fail(Errc::NegativeValue, "power-log scale must be non-negative");
  for (std::size_t i = 0; i < 2; ++i)
    if (!std::isfinite(params.alpha[i]) || !std::isfinite(params.beta[i]))
      fail(Errc::InvalidArgument, "power-log exponents must be finite");
  if (params.scale > 0)
    for (std::size_t i = 0; i < 2; ++i)
      if (!axis_factor_monotone(params.alpha[i], params.beta[i]))
        fail(Errc::NonMonotone, "t^-" + num(params.alpha[i]) + " |ln t|^" + num(params.beta[i]) +
                                    " is not non-increasing on (0,1]");
  Rearrangement2D r;
  r.kind_ = RearrangementKind::Analytic;
  r.form_ = AnalyticForm::PowerLog;
  r.power_log_ = params;
  return r;
}

double Rearrangement2D::log_evaluate(double t1, double t2) const {
  check_domain(t1, t2);
  if (step_) {
    double v = step_->values(cell_of(step_->edges2, t2), cell_of(step_->edges1, t1));
    return std::log(v);
  }
  const auto& pl = *power_log_;
  if (pl.scale == 0) return -kInf;
  return std::log(pl.scale) + log_axis_factor(t1, pl.alpha[0], pl.beta[0]) +
         log_axis_factor(t2, pl.alpha[1], pl.beta[1]);
}

double Rearrangement2D::evaluate(double t1, double t2) const {
  check_domain(t1, t2);
  if (step_) return step_->values(cell_of(step_->edges2, t2), cell_of(step_->edges1, t1));
  return std::exp(log_evaluate(t1, t2));
}

Rearrangement2D Rearrangement2D::scaled(double c) const {
  if (!std::isfinite(c) || c < 0) fail(Errc::InvalidArgument, "scale factor must be finite and >= 0");
  Rearrangement2D r = *this;
  if (r.step_)
    for (std::size_t row = 0; row < r.step_->values.rows(); ++row)
      for (double& v : r.step_->values.row(row)) v *= c;
  if (r.power_log_) r.power_log_->scale *= c;
  return r;
}

bool Rearrangement2D::is_monotone() const {
  if (step_) return step_monotone(step_->values);
  const auto& pl = *power_log_;
  return pl.scale == 0 ||
         (axis_factor_monotone(pl.alpha[0], pl.beta[0]) && axis_factor_monotone(pl.alpha[1], pl.beta[1]));
}

std::string Rearrangement2D::describe() const {
  if (example1_) {
    const auto& e = *example1_;
    return "example1(p=" + to_string(e.p) + ",r=" + to_string(e.r) + ",theta=" + to_string(e.theta) +
           ",delta=" + to_string(e.delta) + ")";
  }
  if (form_ == AnalyticForm::Constant) return "constant(" + num(step_->values(0, 0)) + ")";
  if (form_ == AnalyticForm::Indicator)
    return "indicator(" + num(step_->edges1.front()) + "," + num(step_->edges2.front()) + ";" +
           num(step_->values(0, 0)) + ")";
  if (power_log_) {
    const auto& pl = *power_log_;
    return "powerlog(scale=" + num(pl.scale) + ",alpha=(" + num(pl.alpha[0]) + "," + num(pl.alpha[1]) +
           "),beta=(" + num(pl.beta[0]) + "," + num(pl.beta[1]) + "))";
  }
  return "grid(" + std::to_string(step_->values.cols()) + "x" + std::to_string(step_->values.rows()) + ")";
}

namespace {

Matrix two_stage_sort(const Matrix& in) {
  Matrix m = in;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    std::sort(row.begin(), row.end(), std::greater<>());
  }
  std::vector<double> col(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < m.rows(); ++r) col[r] = m(r, c);
    std::sort(col.begin(), col.end(), std::greater<>());
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = col[r];
  }
  return m;
}

}  // namespace

Rearrangement2D iterated_rearrangement(const GridFunction2D& f) {
  return Rearrangement2D::from_grid(two_stage_sort(f.values()));
}

bool equimeasurable_check(const GridFunction2D& f, const Matrix& r) {
  if (r.rows() != f.n2() || r.cols() != f.n1()) fail(Errc::ShapeMismatch, "rearrangement shape differs from grid");
  return two_stage_sort(f.values()) == r;
}

bool equimeasurable_check(const GridFunction2D& f, const Rearrangement2D& r) {
  if (r.kind() != RearrangementKind::Grid || !r.step_data())
    fail(Errc::ShapeMismatch, "equimeasurability needs a grid rearrangement");
  return equimeasurable_check(f, r.step_data()->values);
}

Rearrangement2D analytic_example1(const ParamPair& p, const ParamPair& r, const ThetaPair& theta,
                                  const ThetaPair& delta, std::optional<Pair2> t_exponent) {
  if (!(theta.t1 > 0 && theta.t2 > 0 && delta.t1 > 0 && delta.t2 > 0))
    fail(Errc::InvalidArgument, "example1 needs theta > 0 and delta > 0");
  const Pair2 rinv = r.reciprocal();
  PowerLogParams pl;
  pl.alpha = t_exponent.value_or(p.reciprocal());
  pl.beta = {theta.t1 - rinv[0] - delta.t1, theta.t2 - rinv[1] - delta.t2};
  Rearrangement2D out = Rearrangement2D::power_log(pl);
  out.form_ = AnalyticForm::Example1;
  out.example1_ = Example1Params{p, r, theta, delta, pl.alpha};
  return out;
}

}  // namespace gl
