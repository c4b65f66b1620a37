#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gl/params.hpp"

namespace gl {

/// Dense row-major matrix. For functions on the unit square the row index
/// runs along x2 (t2) and the column index along x1 (t1).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  /// Throws ShapeMismatch on ragged input.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Non-negative function on [0,1]^2, constant on the N1 x N2 uniform cells.
/// values(j, i) is the value on cell i along x1, j along x2.
class GridFunction2D {
 public:
  /// Throws NegativeValue / NonFiniteValue / ShapeMismatch (empty matrix).
  explicit GridFunction2D(Matrix values);

  std::size_t n1() const { return values_.cols(); }
  std::size_t n2() const { return values_.rows(); }
  const Matrix& values() const { return values_; }

 private:
  Matrix values_;
};

/// Cells along one axis: cell b covers (e[b-1], e[b]] with e[-1] = 0, and
/// the last upper edge is 1. Right-closed so evaluation is defined at edges.
struct StepGrid {
  std::vector<double> edges1;
  std::vector<double> edges2;
  Matrix values;  // rows: cells along t2, cols: cells along t1
};

/// Product form scale * prod_i t_i^{-alpha_i} |ln t_i|^{beta_i}.
struct PowerLogParams {
  double scale = 1.0;
  Pair2 alpha{0.0, 0.0};
  Pair2 beta{0.0, 0.0};
};

struct Example1Params {
  ParamPair p;
  ParamPair r;
  ThetaPair theta;
  ThetaPair delta;
  Pair2 t_exponent{};
};

enum class RearrangementKind { Grid, Analytic };
enum class AnalyticForm { Constant, Indicator, Example1, PowerLog };

/// The iterated decreasing rearrangement f^{*1,*2}, either grid-backed or in
/// closed form. Every instance is non-negative and non-increasing in each
/// variable; the factories reject anything else.
class Rearrangement2D {
 public:
  /// Uniform N1 x N2 cells (the output of iterated_rearrangement).
  static Rearrangement2D from_grid(Matrix sorted);
  /// Arbitrary product partition, e.g. dyadic edges 2^{-k}.
  static Rearrangement2D step(std::vector<double> edges1, std::vector<double> edges2, Matrix values);
  static Rearrangement2D constant(double c);
  /// height on [0,a1] x [0,a2], zero elsewhere; 0 < a_i <= 1.
  static Rearrangement2D indicator(double a1, double a2, double height = 1.0);
  static Rearrangement2D power_log(const PowerLogParams& params);

  RearrangementKind kind() const { return kind_; }
  std::optional<AnalyticForm> form() const { return form_; }

  /// Right-closed cells for grids, exact closed form otherwise.
  /// Throws OutOfDomain unless 0 < t1, t2 <= 1.
  double evaluate(double t1, double t2) const;
  /// log of evaluate(); -inf where the value is zero. Avoids overflow of the
  /// power factors near t = 0.
  double log_evaluate(double t1, double t2) const;

  Rearrangement2D scaled(double c) const;

  /// Piecewise-constant forms (grids, constants, indicators) expose cells.
  const StepGrid* step_data() const { return step_ ? &*step_ : nullptr; }
  const PowerLogParams* power_log_data() const { return power_log_ ? &*power_log_ : nullptr; }
  const std::optional<Example1Params>& example1() const { return example1_; }

  /// Monotonicity re-check: exact on cells, log-spaced sample for closed forms.
  bool is_monotone() const;

  std::string describe() const;

 private:
  friend Rearrangement2D analytic_example1(const ParamPair&, const ParamPair&, const ThetaPair&,
                                           const ThetaPair&, std::optional<Pair2>);
  Rearrangement2D() = default;

  RearrangementKind kind_ = RearrangementKind::Grid;
  std::optional<AnalyticForm> form_;
  std::optional<StepGrid> step_;
  std::optional<PowerLogParams> power_log_;
  std::optional<Example1Params> example1_;
};

/// Sort every row (x1 direction) non-increasingly, then every column.
Rearrangement2D iterated_rearrangement(const GridFunction2D& f);

/// Replays the two-stage sort of f and compares with r exactly.
/// Throws ShapeMismatch when shapes differ.
bool equimeasurable_check(const GridFunction2D& f, const Matrix& r);
bool equimeasurable_check(const GridFunction2D& f, const Rearrangement2D& r);

/// |ln t1|^{th1-1/r1-d1} |ln t2|^{th2-1/r2-d2} t1^{-e1} t2^{-e2}, with e
/// defaulting to 1/p. Pass t_exponent to use a different power of t
/// (for instance r/p). Throws InvalidArgument unless
/// theta, delta > 0 and NonMonotone when the candidate is not non-increasing
/// (a negative log exponent blows up at t = 1).
Rearrangement2D analytic_example1(const ParamPair& p, const ParamPair& r, const ThetaPair& theta,
                                  const ThetaPair& delta, std::optional<Pair2> t_exponent = std::nullopt);

/// CSV grid: first line "N1,N2", then N2 lines of N1 comma-separated values.
GridFunction2D read_grid_csv(std::istream& in);
GridFunction2D read_grid_csv_file(const std::string& path);
void write_grid_csv(std::ostream& out, const GridFunction2D& f);

}  // namespace gl
