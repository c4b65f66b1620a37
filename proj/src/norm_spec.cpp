#include "gl/norm_spec.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "gl/error.hpp"

namespace gl {

const char* to_string(Space s) noexcept {
  switch (s) {
    case Space::Lorentz: return "lorentz";
    case Space::WeakLorentz: return "weak_lorentz";
    case Space::Grand: return "grand";
    case Space::LogWeightWeak: return "log_weight_weak";
    case Space::LogWeightIntegral: return "log_weight_integral";
    case Space::DyadicGrand: return "dyadic_grand";
  }
  return "?";
}

Space parse_space(const std::string& name) {
  std::string k = name;
  std::transform(k.begin(), k.end(), k.begin(), [](unsigned char c) { return c == '-' ? '_' : std::tolower(c); });
  for (Space s : {Space::Lorentz, Space::WeakLorentz, Space::Grand, Space::LogWeightWeak, Space::LogWeightIntegral,
                  Space::DyadicGrand})
    if (k == to_string(s)) return s;
  if (k == "dyadic") return Space::DyadicGrand;
  fail(Errc::Parse, "unknown space '" + name + "'");
}

NormResult NormSpec::evaluate(const Rearrangement2D& r) const {
  switch (space) {
    case Space::Lorentz: return lorentz_norm(r, p, q, grid);
    case Space::WeakLorentz: return weak_lorentz_norm(r, p, grid);
    case Space::Grand: return grand_norm(r, GrandParams{p, q, theta}, grid, search, box_hi);
    case Space::LogWeightWeak: return log_weight_weak_norm(r, p, theta, grid, variant);
    case Space::LogWeightIntegral: return log_weight_integral_bound(r, p, q, theta, side, grid);
    case Space::DyadicGrand: return dyadic_grand_norm(r, GrandParams{p, q, theta}, tau, trunc, search);
  }
  fail(Errc::InvalidArgument, "unknown space");
}

NormSpec NormSpec::refined() const {
  NormSpec s = *this;
  s.grid = grid.doubled();
  s.search = search.refined();
  s.trunc.depth = 2 * trunc.depth;
  return s;
}

nlohmann::ordered_json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

namespace {

nlohmann::ordered_json pair_json(double a, double b) {
  return nlohmann::ordered_json::array({json_number(a), json_number(b)});
}

}  // namespace

nlohmann::ordered_json to_json(const LogGrid& g) {
  nlohmann::ordered_json j;
  j["t_min"] = g.t_min;
  j["t_max"] = g.t_max;
  j["nodes"] = g.nodes;
  j["rule"] = to_string(g.rule);
  j["rel_tol"] = g.rel_tol;
  return j;
}

nlohmann::ordered_json to_json(const SearchConfig& s) {
  nlohmann::ordered_json j;
  j["coarse_nodes"] = s.coarse_nodes;
  j["iterations"] = s.iterations;
  j["passes"] = s.passes;
  j["rel_tol"] = s.rel_tol;
  j["floor"] = s.floor;
  return j;
}

nlohmann::ordered_json NormSpec::to_json() const {
  nlohmann::ordered_json j;
  j["space"] = to_string(space);
  j["p"] = pair_json(p.a, p.b);
  if (space != Space::WeakLorentz && space != Space::LogWeightWeak) j["q"] = pair_json(q.a, q.b);
  if (space != Space::Lorentz && space != Space::WeakLorentz) j["theta"] = pair_json(theta.t1, theta.t2);
  if (space == Space::LogWeightWeak) j["variant"] = gl::to_string(variant);
  if (space == Space::LogWeightIntegral) j["side"] = gl::to_string(side);
  if (space == Space::Grand && box_hi) j["box_hi"] = pair_json((*box_hi)[0], (*box_hi)[1]);
  if (space == Space::DyadicGrand) {
    j["tau"] = pair_json(tau.a, tau.b);
    j["depth"] = trunc.depth;
  } else {
    j["grid"] = gl::to_json(grid);
  }
  if (space == Space::Grand || space == Space::DyadicGrand) j["search"] = gl::to_json(search);
  return j;
}

std::string NormSpec::label() const {
  std::string s = std::string(to_string(space)) + "[p=" + to_string(p);
  if (space != Space::WeakLorentz && space != Space::LogWeightWeak) s += ",q=" + to_string(q);
  if (space != Space::Lorentz && space != Space::WeakLorentz) s += ",theta=" + to_string(theta);
  if (space == Space::DyadicGrand) s += ",tau=" + to_string(tau);
  return s + "]";
}

nlohmann::ordered_json to_json(const NormResult& r) {
  nlohmann::ordered_json j;
  j["value"] = json_number(r.value);
  if (r.extremal_eps)
    j["extremal_eps"] = pair_json((*r.extremal_eps)[0], (*r.extremal_eps)[1]);
  else
    j["extremal_eps"] = nullptr;
  j["converged"] = r.converged;
  nlohmann::ordered_json d;
  d["grid_levels"] = r.diagnostics.grid_levels;
  d["nodes"] = r.diagnostics.nodes;
  d["t_min"] = r.diagnostics.t_min;
  d["t_max"] = r.diagnostics.t_max;
  d["tail"] = json_number(r.diagnostics.tail);
  d["search_evaluations"] = r.diagnostics.search_evaluations;
  if (!r.diagnostics.note.empty()) d["note"] = r.diagnostics.note;
  j["diagnostics"] = d;
  return j;
}

}  // namespace gl
