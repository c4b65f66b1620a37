#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gl/params.hpp"
#include "gl/quadrature.hpp"
#include "gl/rearrange.hpp"
#include "gl/search.hpp"

namespace gl {

struct Diagnostics {
  std::size_t grid_levels = 1;
  std::size_t nodes = 0;
  double t_min = 0.0;
  double t_max = 1.0;
  /// Relative contribution of the part below t_min (dyadic: of the terms
  /// beyond the truncation depth). +inf when the integrand does not decay.
  double tail = 0.0;
  std::size_t search_evaluations = 0;
  std::string note;
};

struct NormResult {
  double value = 0.0;
  std::optional<Pair2> extremal_eps;
  bool converged = true;
  Diagnostics diagnostics;
};

/// Largest accepted relative change between truncation depths M and 2M.
inline constexpr double kDyadicTailTol = 1e-6;

NormResult lorentz_norm(const Rearrangement2D& r, const ParamPair& p, const ParamPair& q, const LogGrid& grid);
NormResult weak_lorentz_norm(const Rearrangement2D& r, const ParamPair& p, const LogGrid& grid);

/// Sup over (0, hi] (PosTheta, PosThetaPInf) or inf over (0, hi] (NegTheta)
/// of eps^theta times the weighted functional. hi defaults to the regime box
/// (1 or 1/p) and can be lowered for restricted-range comparisons. Routes
/// q = (inf, inf) to grand_weak_norm.
NormResult grand_norm(const Rearrangement2D& r, const GrandParams& gp, const LogGrid& grid,
                      const SearchConfig& search = {}, std::optional<Pair2> box_hi = std::nullopt);
NormResult grand_weak_norm(const Rearrangement2D& r, const GrandParams& gp, const LogGrid& grid,
                           const SearchConfig& search = {}, std::optional<Pair2> box_hi = std::nullopt);

/// Upper limit of the admissible epsilon box for a validated regime.
Pair2 regime_box(const GrandParams& gp);

enum class LogWeightVariant { Literal, Guarded };
/// sup_t t^{1/p} |ln t|^{-theta} r (Literal; NonFiniteValue when the sup is
/// infinite) or with |ln t|^{-theta} replaced by sup_{0<e<=1} e^theta t^e (Guarded).
NormResult log_weight_weak_norm(const Rearrangement2D& r, const ParamPair& p, const ThetaPair& theta,
                                const LogGrid& grid, LogWeightVariant variant = LogWeightVariant::Guarded);

enum class BoundSide { UpperForPosTheta, LowerForNegTheta };
NormResult log_weight_integral_bound(const Rearrangement2D& r, const ParamPair& p, const ParamPair& q,
                                     const ThetaPair& theta, BoundSide side, const LogGrid& grid);

/// |theta| / |ln t|, clamped to hi when given. Throws TAtOne for t = 1,
/// OutOfDomain outside (0,1], InvalidArgument for theta = 0.
double optimal_epsilon(double theta, double t, std::optional<double> hi = std::nullopt);

/// Dyadic form with k = 1/eps over [1, 1/floor]; extremal_eps holds 1/k.
NormResult dyadic_grand_norm(const Rearrangement2D& r, const GrandParams& gp, const ParamPair& tau,
                             const DyadicTruncation& trunc, const SearchConfig& k_search = {});

/// A non-increasing function on (0,1] for the one-dimensional norms:
/// exp(log_values[b]) t^{-alpha} |ln t|^{beta} on cell b of axis.edges.
struct Profile1D {
  AxisProfile axis;
  std::vector<double> log_values{0.0};

  static Profile1D constant(double c);
  static Profile1D power(double alpha, double beta = 0.0, double scale = 1.0);
  static Profile1D step(std::vector<double> edges, const std::vector<double>& values);
  double evaluate(double t) const;
};

enum class LebesgueForm { EpsSup, LogChar };
/// EpsSup: sup_{0<e<=p-1} e^theta ||f||_{p-e}. LogChar:
/// sup_s (1 - ln s)^{-theta/p} (int_s^1 f^p dt)^{1/p}.
NormResult grand_lebesgue_1d(const Profile1D& f, double p, double theta, LebesgueForm form, const LogGrid& grid,
                             const SearchConfig& search = {});

const char* to_string(LogWeightVariant v) noexcept;
const char* to_string(BoundSide s) noexcept;
const char* to_string(LebesgueForm f) noexcept;

}  // namespace gl
