#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gl/params.hpp"
#include "gl/rearrange.hpp"

namespace gl {

enum class Rule { Trapezoid, Midpoint };
const char* to_string(Rule r) noexcept;

/// Discretization of (t_min, t_max] under t = e^{-u}: M nodes uniform in u on
/// [-ln t_max, -ln t_min].
struct LogGrid {
  double t_min = 0x1p-40;
  std::size_t nodes = 4096;
  Rule rule = Rule::Trapezoid;
  double t_max = 1.0;
  /// Largest accepted relative tail below t_min; also the refinement tolerance.
  double rel_tol = 1e-4;

  /// Throws InvalidArgument unless 0 < t_min < t_max <= 1 and nodes >= 16.
  void validate() const;
  double u_lo() const;
  double u_hi() const;
  double step() const;
  std::vector<double> u_nodes() const;
  /// Strictly increasing in (t_min, t_max] ordering: t_nodes()[0] = t_min.
  std::vector<double> t_nodes() const;
  LogGrid doubled() const;
  LogGrid with_t_max(double t) const;
};

/// Successive node doublings starting at `base`; `levels` grids in total.
std::vector<LogGrid> doubling_schedule(const LogGrid& base, std::size_t levels);

struct DyadicTruncation {
  int depth = 60;
  void validate() const;
};

/// h(t1,t2) = t1^{w1} t2^{w2} v(t1,t2). The weight is integrated exactly
/// against the rule; v is sampled. Knots (values of t where v may jump) are
/// respected: v is sampled one-sidedly next to them.
struct WeightedIntegrand {
  Pair2 weight{0.0, 0.0};
  std::function<double(double, double)> value;
  std::vector<double> knots1;
  std::vector<double> knots2;
};

/// (int (int h^{q1} dt1/t1)^{q2/q1} dt2/t2)^{1/q2} over (t_min, t_max]^2.
double nested_log_integral(const WeightedIntegrand& h, const ParamPair& q, const LogGrid& grid);
/// Same with the value returned as its logarithm (no Overflow check).
double nested_log_integral_log(const WeightedIntegrand& h, const ParamPair& q, const LogGrid& grid);

/// (sum_{m2} (sum_{m1} g(m1,m2)^{tau1})^{tau2/tau1})^{1/tau2}, m_i in [-depth, 0].
double dyadic_nested_sum(const std::function<double(int, int)>& g, const ParamPair& tau,
                         const DyadicTruncation& trunc);
/// Log-domain core: log_terms(j2, j1) = log g(-j1, -j2) for j in [0, depth].
double dyadic_nested_log_sum(const Matrix& log_terms, const ParamPair& tau);

struct Refined {
  double value = 0.0;
  bool converged = false;
  std::size_t levels_used = 0;
};

/// First value whose relative change from its predecessor is below rel_tol.
Refined refine_until(const std::function<double(const LogGrid&)>& f, const std::vector<LogGrid>& schedule,
                     double rel_tol);

// ---------------------------------------------------------------------------
// Cell engine used by the norm evaluators.

/// One axis of a separable model: cells (e[b-1], e[b]] and a density
/// t^{-alpha} |ln t|^{beta} multiplying every cell value.
struct AxisProfile {
  std::vector<double> edges{1.0};
  double alpha = 0.0;
  double beta = 0.0;
};

/// Extra per-axis factor psi(t) in the integrand.
struct AxisFactor {
  enum class Kind { None, LogPower, Guarded };
  Kind kind = Kind::None;
  /// LogPower: |ln t|^exponent. Guarded: m^theta t^m with m = min(1, theta/|ln t|).
  double exponent = 0.0;

  static AxisFactor none() { return {}; }
  static AxisFactor log_power(double k) { return {Kind::LogPower, k}; }
  static AxisFactor guarded(double theta) { return {Kind::Guarded, theta}; }
};

/// r(t1,t2) = exp(log_values(b2,b1)) * d1(t1) * d2(t2) on cell (b1,b2).
struct CellModel {
  AxisProfile axis1;
  AxisProfile axis2;
  Matrix log_values;
};

CellModel cell_model(const Rearrangement2D& r);

/// Per-cell one-dimensional integrals and sups along one axis.
class AxisIntegrator {
 public:
  AxisIntegrator(AxisProfile profile, AxisFactor factor, const LogGrid& grid);

  std::size_t cells() const { return profile_.edges.size(); }
  /// out[b] = log int_{cell b} t^{c} (d psi)^{power} dt/t over the grid range.
  void log_integrals(double c, double power, std::span<double> out) const;
  /// log of the same integrand over (0, t_min) by a one-term asymptotic,
  /// +inf when the integrand does not decay; -inf if nothing is truncated.
  double log_floor_tail(double c, double power) const;
  /// True when the integral over (0, t_min) is infinite (not just large).
  bool integral_diverges(double c, double power) const;
  /// True when sup over (0, t_min) of t^{w} d psi is infinite.
  bool sup_diverges(double w) const;
  /// Cell containing t_min, or cells() if none does.
  std::size_t floor_cell() const { return floor_cell_; }
  /// out[b] = log sup_{cell b} t^{w} d psi; at_floor[b] set when the sup is
  /// only reached at t_min (the continuum sup lies below the grid).
  void log_sups(double w, std::span<double> out, std::vector<char>* at_floor = nullptr) const;
  /// Running log-integrals from t_max downward: entry k covers [u_lo, nodes[k]],
  /// with the cell value log_cell[b] folded in.
  std::vector<double> log_cumulative(double c, double power, std::span<const double> log_cell) const;
  const std::vector<double>& nodes() const { return nodes_; }
  bool exact() const { return exact_; }

 private:
  double log_g(double u) const;
  double dlog_g(double u) const;
  double beta_total() const;

  AxisProfile profile_;
  AxisFactor factor_;
  double u_lo_ = 0.0;
  double u_hi_ = 0.0;
  bool exact_ = false;
  std::size_t floor_cell_ = 0;
  std::vector<double> cell_lo_, cell_hi_;  // u-range of each cell, clipped
  std::vector<double> nodes_;              // merged u nodes
  std::vector<std::size_t> cell_of_;       // per interval
  std::vector<double> lg_;                 // log g at nodes
  std::vector<double> lg_mid_;             // log g at interval midpoints
  Rule rule_ = Rule::Trapezoid;
};

/// Evaluates the weighted nested functional of a CellModel for varying weight
/// exponents. Splitting into inner (depends on w1) and outer (depends on w2)
/// parts lets an epsilon search reuse one axis while moving the other.
class NestedEvaluator {
 public:
  NestedEvaluator(const CellModel& model, const ParamPair& q, const LogGrid& grid,
                  AxisFactor f1 = AxisFactor::none(), AxisFactor f2 = AxisFactor::none());

  bool weak() const { return weak_; }
  std::vector<double> inner(double w1) const;
  std::vector<double> outer(double w2) const;
  double combine(std::span<const double> in, std::span<const double> out) const;
  /// log of the functional with weight t1^{w1} t2^{w2}.
  double log_value(double w1, double w2) const;
  /// Relative growth of the value when the part below t_min is restored
  /// (integrals), or +inf when a sup is only reached at t_min (weak).
  double tail_fraction(double w1, double w2) const;
  /// True when the untruncated functional is infinite because of t -> 0.
  bool diverges(double w1, double w2) const;

 private:
  std::vector<double> inner_with(std::span<const double> s1) const;
  std::vector<double> outer_sums(double w2, bool with_tail) const;
  std::vector<double> inner_sums(double w1, bool with_tail) const;

  Matrix log_values_;
  ParamPair q_;
  bool weak_;
  AxisIntegrator ax1_, ax2_;
};

}  // namespace gl
