#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "gl/error.hpp"
#include "gl/rearrange.hpp"
#include "oracles.hpp"

using namespace gl;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidArgument;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> small(0, 5);
  std::uniform_real_distribution<double> real(0.0, 10.0);
  Matrix m(rows, cols);
  const bool ties = rng() % 2;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = ties ? small(rng) : real(rng);
  return m;
}

std::vector<std::vector<double>> to_rows(const Matrix& m) {
  std::vector<std::vector<double>> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out[r].assign(m.row(r).begin(), m.row(r).end());
  return out;
}

}  // namespace

TEST_CASE("iterated rearrangement matches the selection-sort oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 20, cols = 1 + rng() % 20;
    Matrix m = random_matrix(rng, rows, cols);
    auto r = iterated_rearrangement(GridFunction2D(m));
    auto expect = oracle::two_stage_selection_sort(to_rows(m));
    CHECK(r.step_data()->values == Matrix::from_rows(expect));
    CHECK(r.is_monotone());
    CHECK(equimeasurable_check(GridFunction2D(m), r));
    auto a = m.data(), b = r.step_data()->values.data();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}

TEST_CASE("rearrangement is idempotent and scale-equivariant") {
  std::mt19937_64 rng(11);
  Matrix m = random_matrix(rng, 9, 13);
  auto r = iterated_rearrangement(GridFunction2D(m));
  auto rr = iterated_rearrangement(GridFunction2D(r.step_data()->values));
  CHECK(rr.step_data()->values == r.step_data()->values);
  auto scaled = r.scaled(3.0);
  CHECK(scaled.evaluate(0.5, 0.5) == doctest::Approx(3.0 * r.evaluate(0.5, 0.5)));
}

TEST_CASE("grid cells are right-closed") {
  Matrix m = Matrix::from_rows({{4, 3}, {2, 1}});
  auto r = Rearrangement2D::from_grid(m);
  CHECK(r.evaluate(0.5, 0.5) == 4);
  CHECK(r.evaluate(0.51, 0.5) == 3);
  CHECK(r.evaluate(0.5, 1.0) == 2);
  CHECK(r.evaluate(1.0, 1.0) == 1);
  CHECK(code_of([&] { r.evaluate(0.0, 0.5); }) == Errc::OutOfDomain);
  CHECK(code_of([&] { r.evaluate(0.5, 1.5); }) == Errc::OutOfDomain);
}

TEST_CASE("grid validation") {
  CHECK(code_of([] { GridFunction2D(Matrix::from_rows({{1, -1}})); }) == Errc::NegativeValue);
  CHECK(code_of([] { GridFunction2D(Matrix::from_rows({{1, NAN}})); }) == Errc::NonFiniteValue);
  CHECK(code_of([] { GridFunction2D{Matrix{}}; }) == Errc::ShapeMismatch);
  CHECK(code_of([] { Matrix::from_rows({{1, 2}, {3}}); }) == Errc::ShapeMismatch);
  CHECK(code_of([] { Rearrangement2D::from_grid(Matrix::from_rows({{1, 2}})); }) == Errc::NonMonotone);
}

TEST_CASE("closed forms") {
  auto c = Rearrangement2D::constant(2.5);
  CHECK(c.evaluate(1e-9, 1.0) == 2.5);
  auto ind = Rearrangement2D::indicator(0.25, 0.5);
  CHECK(ind.evaluate(0.25, 0.5) == 1);
  CHECK(ind.evaluate(0.2500001, 0.5) == 0);
  CHECK(ind.evaluate(0.1, 0.6) == 0);
  auto pl = Rearrangement2D::power_log({2.0, {0.5, 1.0}, {1.0, 0.0}});
  const double t1 = 0.01, t2 = 0.3;
  CHECK(pl.evaluate(t1, t2) == doctest::Approx(2.0 * std::pow(t1, -0.5) * std::fabs(std::log(t1)) / t2));
  CHECK(code_of([] { Rearrangement2D::power_log({1.0, {0.0, 0.0}, {-1.0, 0.0}}); }) == Errc::NonMonotone);
}

TEST_CASE("example 1 family") {
  auto e = analytic_example1({1, 1}, {1, 1}, {2, 2}, {0.5, 0.5});
  CHECK(e.form() == AnalyticForm::Example1);
  const double t = 0.05;
  // |ln t|^{2-1-0.5} t^{-1}
  CHECK(e.evaluate(t, t) == doctest::Approx(std::pow(std::sqrt(std::fabs(std::log(t))) / t, 2)));
  CHECK(code_of([] { analytic_example1({1, 1}, {1, 1}, {1, 1}, {2, 2}); }) == Errc::NonMonotone);
  CHECK(code_of([] { analytic_example1({1, 1}, {1, 1}, {0, 1}, {1, 1}); }) == Errc::InvalidArgument);
  auto alt = analytic_example1({2, 2}, {1, 1}, {2, 2}, {0.5, 0.5}, Pair2{0.25, 0.25});
  CHECK(alt.evaluate(t, 1 - 1e-12) > 0);
  CHECK(alt.example1()->t_exponent[0] == 0.25);
}

TEST_CASE("csv round trip and errors") {
  std::istringstream in("3,2\n3,2,1\n\n1,1,0\n");
  auto g = read_grid_csv(in);
  CHECK(g.n1() == 3);
  CHECK(g.n2() == 2);
  CHECK(g.values()(1, 0) == 1);
  std::ostringstream out;
  write_grid_csv(out, g);
  std::istringstream back(out.str());
  CHECK(read_grid_csv(back).values() == g.values());

  std::istringstream bad_header("3\n1,2,3\n");
  CHECK(code_of([&] { read_grid_csv(bad_header); }) == Errc::Parse);
  std::istringstream short_row("2,2\n1,2\n3\n");
  CHECK(code_of([&] { read_grid_csv(short_row); }) == Errc::ShapeMismatch);
  std::istringstream missing("2,2\n1,2\n");
  CHECK(code_of([&] { read_grid_csv(missing); }) == Errc::ShapeMismatch);
  std::istringstream text("1,1\nx\n");
  CHECK(code_of([&] { read_grid_csv(text); }) == Errc::Parse);
  CHECK(code_of([] { read_grid_csv_file("/nonexistent/grid.csv"); }) == Errc::Io);
}
