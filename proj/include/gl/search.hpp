#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "gl/params.hpp"

namespace gl {

/// Extremal parameter search: log-spaced coarse scan over [floor, hi] per
/// axis, then golden-section refinement in log eps, one axis at a time.
struct SearchConfig {
  std::size_t coarse_nodes = 64;
  std::size_t iterations = 100;
  std::size_t passes = 3;
  double rel_tol = 1e-12;
  double floor = 1e-6;

  /// Throws InvalidArgument unless coarse_nodes >= 16, iterations >= 1.
  void validate() const;
  SearchConfig refined() const;
};

/// Objective of the form theta1 ln e1 + theta2 ln e2 + combine(state1(e1), state2(e2)),
/// all in log scale. The states let one axis move while the other is reused.
struct SeparableObjective {
  std::function<std::vector<double>(double)> state1;
  std::function<std::vector<double>(double)> state2;
  std::function<double(const std::vector<double>&, const std::vector<double>&)> combine;
  Pair2 theta{0.0, 0.0};
};

struct SearchOutcome {
  Pair2 arg{0.0, 0.0};
  double log_value = 0.0;
  std::size_t evaluations = 0;
  /// Coarse scan samples, row-major (e2 index outer): used by property checks.
  std::vector<double> coarse1, coarse2;
  std::vector<double> coarse_values;
};

/// Log-spaced nodes on [lo, hi], both ends included.
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

/// Maximizes (or minimizes) the objective over (0, hi1] x (0, hi2], sampling
/// from cfg.floor upward. NaN samples are skipped; SearchFailed when every
/// coarse sample is NaN. A +inf sup (or an all +inf inf) is returned as is.
SearchOutcome extremize(const SeparableObjective& obj, Pair2 hi, bool maximize, const SearchConfig& cfg);

/// One-dimensional version on [lo, hi].
SearchOutcome extremize_1d(const std::function<double(double)>& f, double lo, double hi, bool maximize,
                           const SearchConfig& cfg);

}  // namespace gl
