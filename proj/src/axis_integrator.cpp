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

void check_edges(const std::vector<double>& e) {
  if (e.empty() || e.back() != 1.0) fail(Errc::InvalidArgument, "axis edges must end at 1");
  for (std::size_t i = 0; i < e.size(); ++i)
    if (!(e[i] > (i ? e[i - 1] : 0.0))) fail(Errc::InvalidArgument, "axis edges must increase in (0,1]");
}

}  // namespace

AxisIntegrator::AxisIntegrator(AxisProfile profile, AxisFactor factor, const LogGrid& grid)
    : profile_(std::move(profile)), factor_(factor), rule_(grid.rule) {
  grid.validate();
  check_edges(profile_.edges);
  if (!std::isfinite(profile_.alpha) || !std::isfinite(profile_.beta) || !std::isfinite(factor_.exponent))
    fail(Errc::InvalidArgument, "axis exponents must be finite");
  if (factor_.kind == AxisFactor::Kind::Guarded && !(factor_.exponent > 0))
    fail(Errc::InvalidArgument, "guarded factor needs theta > 0");
  u_lo_ = grid.u_lo();
  u_hi_ = grid.u_hi();
  const double beta_eff = profile_.beta + (factor_.kind == AxisFactor::Kind::LogPower ? factor_.exponent : 0.0);
  exact_ = beta_eff == 0.0 && factor_.kind != AxisFactor::Kind::Guarded;

  const std::size_t nb = profile_.edges.size();
  cell_lo_.assign(nb, 0.0);
  cell_hi_.assign(nb, 0.0);
  floor_cell_ = nb;
  std::vector<double> knots;
  for (std::size_t b = 0; b < nb; ++b) {
    const double top = -std::log(profile_.edges[b]);
    const double bot = b ? -std::log(profile_.edges[b - 1]) : kPosInf;
    cell_lo_[b] = std::max(top, u_lo_);
    cell_hi_[b] = std::min(bot, u_hi_);
    if (top <= u_hi_ && u_hi_ < bot) floor_cell_ = b;
    if (top > u_lo_ && top < u_hi_) knots.push_back(top);
  }

  nodes_ = grid.u_nodes();
  nodes_.insert(nodes_.end(), knots.begin(), knots.end());
  std::sort(nodes_.begin(), nodes_.end());
  std::vector<double> merged;
  merged.reserve(nodes_.size());
  for (double u : nodes_)
    if (merged.empty() || u - merged.back() > 1e-13 * std::max(1.0, u)) merged.push_back(u);
  merged.back() = u_hi_;
  nodes_ = std::move(merged);

  const std::size_t n = nodes_.size();
  cell_of_.resize(n - 1);
  lg_.resize(n);
  lg_mid_.resize(n - 1);
  for (std::size_t k = 0; k < n; ++k) lg_[k] = log_g(nodes_[k]);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double mid = 0.5 * (nodes_[k] + nodes_[k + 1]);
    const double t = std::exp(-mid);
    auto it = std::lower_bound(profile_.edges.begin(), profile_.edges.end(), t);
    cell_of_[k] = std::min<std::size_t>(static_cast<std::size_t>(it - profile_.edges.begin()), nb - 1);
    lg_mid_[k] = log_g(mid);
  }
}

double AxisIntegrator::log_g(double u) const {
  const double beta_eff = profile_.beta + (factor_.kind == AxisFactor::Kind::LogPower ? factor_.exponent : 0.0);
  double v = 0.0;
  if (beta_eff != 0.0) {
    if (u == 0.0) return beta_eff > 0 ? kNegInf : kPosInf;
    v += beta_eff * std::log(u);
  }
  if (factor_.kind == AxisFactor::Kind::Guarded) {
    const double th = factor_.exponent;
    const double m = u <= th ? 1.0 : th / u;
    v += th * std::log(m) - u * m;
  }
  return v;
}

double AxisIntegrator::beta_total() const {
  double b = profile_.beta;
  if (factor_.kind == AxisFactor::Kind::LogPower) b += factor_.exponent;
  if (factor_.kind == AxisFactor::Kind::Guarded) b -= factor_.exponent;
  return b;
}

bool AxisIntegrator::integral_diverges(double c, double power) const {
  if (floor_cell_ == cells()) return false;
  const double ce = c - power * profile_.alpha;
  return ce < 0 || (ce == 0 && power * beta_total() >= -1.0);
}

bool AxisIntegrator::sup_diverges(double w) const {
  if (floor_cell_ == cells()) return false;
  const double we = w - profile_.alpha;
  return we < 0 || (we == 0 && beta_total() > 0);
}

double AxisIntegrator::dlog_g(double u) const {
  const double beta_eff = profile_.beta + (factor_.kind == AxisFactor::Kind::LogPower ? factor_.exponent : 0.0);
  double d = beta_eff != 0.0 ? beta_eff / u : 0.0;
  if (factor_.kind == AxisFactor::Kind::Guarded) d += u <= factor_.exponent ? -1.0 : -factor_.exponent / u;
  return d;
}

namespace {

// log of int over interval k of e^{-c u} g^{power}, g given by its logs.
double interval_log_integral(Rule rule, double c, double power, double u0, double u1, double lg0, double lg1,
                             double lg_mid) {
  const double h = u1 - u0;
  if (rule == Rule::Midpoint) return log_exp_integral(c, u0, u1) + power * lg_mid;
  const double x = c * h;
  const double a = std::log(trapezoid_phi0(x)) + power * lg0;
  const double b = std::log(trapezoid_phi1(x)) + power * lg1;
  return std::log(h) - c * u0 + log_add(a, b);
}

}  // namespace

void AxisIntegrator::log_integrals(double c, double power, std::span<double> out) const {
  const std::size_t nb = cells();
  if (out.size() != nb) fail(Errc::ShapeMismatch, "log_integrals output size");
  const double ce = c - power * profile_.alpha;
  std::fill(out.begin(), out.end(), kNegInf);
  if (exact_) {
    for (std::size_t b = 0; b < nb; ++b)
      if (cell_lo_[b] < cell_hi_[b]) out[b] = log_exp_integral(ce, cell_lo_[b], cell_hi_[b]);
    return;
  }
  const double beta_eff = profile_.beta + (factor_.kind == AxisFactor::Kind::LogPower ? factor_.exponent : 0.0);
  const std::size_t n = nodes_.size();
  std::size_t first = 0;
  if (nodes_[0] == 0.0 && std::isinf(lg_[0]) && lg_[0] > 0) {
    // u^{a} singularity at t = 1, integrated exactly to first order.
    const double a = power * beta_eff;
    const double h = nodes_[1];
    double v = kPosInf;
    if (a > -1.0) {
      const double rest = power * (lg_mid_[0] - beta_eff * std::log(0.5 * h));
      v = (a + 1.0) * std::log(h) - std::log(a + 1.0) - ce * h * (a + 1.0) / (a + 2.0) + rest;
    }
    out[cell_of_[0]] = v;
    first = 1;
  }
  if (rule_ == Rule::Midpoint) {
    for (std::size_t k = first; k + 1 < n; ++k) {
      double& o = out[cell_of_[k]];
      o = log_add(o, interval_log_integral(rule_, ce, power, nodes_[k], nodes_[k + 1], lg_[k], lg_[k + 1],
                                           lg_mid_[k]));
    }
    return;
  }
  // Product trapezoid: interval k contributes h (phi0 E_k + phi1 e^{ch} E_{k+1}) with
  // E = e^{-c u} g^power. Each cell is summed in linear scale after a max shift.
  thread_local std::vector<double> a;
  a.resize(n);
  for (std::size_t k = 0; k < n; ++k) a[k] = lg_[k] == kNegInf ? kNegInf : -ce * nodes_[k] + power * lg_[k];
  std::size_t k = first;
  while (k + 1 < n) {
    const std::size_t b = cell_of_[k];
    std::size_t end = k;
    double m = kNegInf;
    while (end + 1 < n && cell_of_[end] == b) {
      m = std::max({m, a[end], a[end + 1]});
      ++end;
    }
    if (m == kNegInf) {
      k = end;
      continue;
    }
    double sum = 0.0, h_prev = -1.0, w0 = 0.0, w1 = 0.0;
    double e_next = std::exp(a[k] - m);
    for (std::size_t j = k; j < end; ++j) {
      const double h = nodes_[j + 1] - nodes_[j];
      if (h != h_prev) {
        const double x = ce * h;
        w0 = h * trapezoid_phi0(x);
        w1 = h * trapezoid_phi1(x) * std::exp(x);
        h_prev = h;
      }
      const double e_here = e_next;
      e_next = std::exp(a[j + 1] - m);
      sum += w0 * e_here + w1 * e_next;
    }
    double& o = out[b];
    o = log_add(o, sum > 0 ? m + std::log(sum) : kNegInf);
    k = end;
  }
}

double AxisIntegrator::log_floor_tail(double c, double power) const {
  if (floor_cell_ == cells()) return kNegInf;
  const double ce = c - power * profile_.alpha;
  const double lg = log_g(u_hi_);
  if (lg == kNegInf) return kNegInf;
  const double lambda = ce - power * dlog_g(u_hi_);
  if (!(lambda > 0)) return kPosInf;
  return -ce * u_hi_ + power * lg - std::log(lambda);
}

void AxisIntegrator::log_sups(double w, std::span<double> out, std::vector<char>* at_floor) const {
  const std::size_t nb = cells();
  if (out.size() != nb) fail(Errc::ShapeMismatch, "log_sups output size");
  const double we = w - profile_.alpha;
  std::fill(out.begin(), out.end(), kNegInf);
  std::vector<double> arg(nb, -1.0);
  auto consider = [&](std::size_t b, double u, double lg) {
    const double v = -we * u + lg;
    if (arg[b] < 0 || v > out[b]) {
      out[b] = v;
      arg[b] = u;
    }
  };
  if (exact_) {
    for (std::size_t b = 0; b < nb; ++b) {
      if (cell_lo_[b] < cell_hi_[b] || b == floor_cell_) {
        consider(b, cell_lo_[b], 0.0);
        consider(b, cell_hi_[b], 0.0);
      }
    }
  } else {
    for (std::size_t k = 0; k + 1 < nodes_.size(); ++k) {
      consider(cell_of_[k], nodes_[k], lg_[k]);
      consider(cell_of_[k], nodes_[k + 1], lg_[k + 1]);
    }
    if (floor_cell_ < nb && arg[floor_cell_] < 0) consider(floor_cell_, u_hi_, lg_.back());
  }
  if (at_floor) {
    at_floor->assign(nb, 0);
    if (floor_cell_ < nb && arg[floor_cell_] == u_hi_ && out[floor_cell_] > kNegInf &&
        -we + dlog_g(u_hi_) > 0)
      (*at_floor)[floor_cell_] = 1;
  }
}

std::vector<double> AxisIntegrator::log_cumulative(double c, double power, std::span<const double> log_cell) const {
  if (log_cell.size() != cells()) fail(Errc::ShapeMismatch, "log_cumulative cell values");
  const double ce = c - power * profile_.alpha;
  std::vector<double> cum(nodes_.size(), kNegInf);
  for (std::size_t k = 0; k + 1 < nodes_.size(); ++k) {
    const double lc = log_cell[cell_of_[k]];
    double v = kNegInf;
    if (lc > kNegInf)
      v = interval_log_integral(rule_, ce, power, nodes_[k], nodes_[k + 1], lg_[k], lg_[k + 1], lg_mid_[k]) +
          power * lc;
    cum[k + 1] = log_add(cum[k], v);
  }
  return cum;
}

}  // namespace gl
