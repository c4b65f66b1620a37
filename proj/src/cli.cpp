#include "gl/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gl/error.hpp"
#include "gl/verify.hpp"

namespace gl::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string csv;
  std::string analytic;
  std::string space = "lorentz";
  std::string p = "2,2";
  std::string q;
  std::string theta = "0,0";
  std::string tau = "1,1";
  std::string variant = "guarded";
  std::string side = "upper";
  std::string box_hi;
  std::string format = "json";
  std::string output;
  std::string rule = "trapezoid";
  double t_min = LogGrid{}.t_min;
  double t_max = 1.0;
  double rel_tol = LogGrid{}.rel_tol;
  std::size_t nodes = LogGrid{}.nodes;
  std::size_t coarse = SearchConfig{}.coarse_nodes;
  std::size_t iterations = SearchConfig{}.iterations;
  int depth = DyadicTruncation{}.depth;
  // sweep
  std::string axis;
  double from = 0.0, to = 1.0;
  std::size_t steps = 9;
  // verify
  std::string theorem;
  std::string s, r, delta, lambda;
  std::string family = "all";
  std::size_t levels = 3;
  std::size_t threads = 0;
};

std::vector<double> numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      fail(Errc::Parse, "not a number: '" + item + "'");
    }
  }
  return out;
}

Rearrangement2D analytic_function(const std::string& spec) {
  const auto eq = spec.find('=');
  const std::string name = spec.substr(0, eq);
  const std::vector<double> a = eq == std::string::npos ? std::vector<double>{} : numbers(spec.substr(eq + 1));
  auto need = [&](std::size_t n) {
    if (a.size() != n) fail(Errc::Parse, name + " takes " + std::to_string(n) + " numbers");
  };
  if (name == "constant") {
    need(1);
    return Rearrangement2D::constant(a[0]);
  }
  if (name == "indicator") {
    if (a.size() == 3) return Rearrangement2D::indicator(a[0], a[1], a[2]);
    need(2);
    return Rearrangement2D::indicator(a[0], a[1]);
  }
  if (name == "example1") {
    need(8);
    return analytic_example1(make_param_pair(a[0], a[1]), make_param_pair(a[2], a[3]), {a[4], a[5]}, {a[6], a[7]});
  }
  if (name == "powerlog") {
    need(5);
    PowerLogParams pl;
    pl.scale = a[0];
    pl.alpha = {a[1], a[2]};
    pl.beta = {a[3], a[4]};
    return Rearrangement2D::power_log(pl);
  }
  fail(Errc::Parse, "unknown analytic function '" + name + "'");
}

Rearrangement2D function_of(const Options& o) {
  if (o.csv.empty() == o.analytic.empty()) fail(Errc::InvalidArgument, "give exactly one of --csv and --analytic");
  if (!o.csv.empty()) return iterated_rearrangement(read_grid_csv_file(o.csv));
  return analytic_function(o.analytic);
}

Json function_json(const Options& o) {
  Json j;
  if (!o.csv.empty())
    j["csv"] = o.csv;
  else
    j["analytic"] = o.analytic;
  return j;
}

LogGrid grid_of(const Options& o) {
  LogGrid g;
  g.t_min = o.t_min;
  g.t_max = o.t_max;
  g.nodes = o.nodes;
  g.rel_tol = o.rel_tol;
  if (o.rule == "trapezoid")
    g.rule = Rule::Trapezoid;
  else if (o.rule == "midpoint")
    g.rule = Rule::Midpoint;
  else
    fail(Errc::Parse, "unknown rule '" + o.rule + "'");
  g.validate();
  return g;
}

SearchConfig search_of(const Options& o) {
  SearchConfig s;
  s.coarse_nodes = o.coarse;
  s.iterations = o.iterations;
  s.validate();
  return s;
}

NormSpec spec_of(const Options& o) {
  NormSpec s;
  s.space = parse_space(o.space);
  s.p = parse_param_pair(o.p);
  s.q = o.q.empty() ? s.p : parse_param_pair(o.q);
  s.theta = parse_theta_pair(o.theta);
  s.tau = parse_param_pair(o.tau);
  if (o.variant == "guarded")
    s.variant = LogWeightVariant::Guarded;
  else if (o.variant == "literal")
    s.variant = LogWeightVariant::Literal;
  else
    fail(Errc::Parse, "unknown variant '" + o.variant + "'");
  if (o.side == "upper")
    s.side = BoundSide::UpperForPosTheta;
  else if (o.side == "lower")
    s.side = BoundSide::LowerForNegTheta;
  else
    fail(Errc::Parse, "unknown side '" + o.side + "'");
  if (!o.box_hi.empty()) {
    const ParamPair b = parse_param_pair(o.box_hi);
    s.box_hi = Pair2{b.a, b.b};
  }
  s.grid = grid_of(o);
  s.search = search_of(o);
  s.trunc.depth = o.depth;
  s.trunc.validate();
  return s;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) fail(Errc::Io, "cannot write '" + o.output + "'");
  f << text;
  if (!f) fail(Errc::Io, "write to '" + o.output + "' failed");
}

std::string csv_number(double v) {
  const Json j = json_number(v);
  return j.is_string() ? j.get<std::string>() : j.dump();
}

int cmd_norm(const Options& o, std::ostream& out) {
  const NormSpec spec = spec_of(o);
  const Rearrangement2D f = function_of(o);
  const NormResult res = spec.evaluate(f);
  if (o.format == "csv") {
    std::string eps1 = "", eps2 = "";
    if (res.extremal_eps) {
      eps1 = csv_number((*res.extremal_eps)[0]);
      eps2 = csv_number((*res.extremal_eps)[1]);
    }
    emit(o,
         "value,converged,eps1,eps2\n" + csv_number(res.value) + "," + (res.converged ? "true" : "false") + "," +
             eps1 + "," + eps2 + "\n",
         out);
  } else {
    Json j;
    j["command"] = "norm";
    j["function"] = function_json(o);
    j["norm"] = spec.to_json();
    j["result"] = to_json(res);
    emit(o, j.dump(2) + "\n", out);
  }
  return res.converged ? kOk : kDiverged;
}

void set_axis(NormSpec& s, const std::string& axis, double v) {
  if (axis == "theta") {
    s.theta = {v, v};
  } else if (axis == "theta1") {
    s.theta.t1 = v;
  } else if (axis == "theta2") {
    s.theta.t2 = v;
  } else if (axis == "p") {
    s.p = make_param_pair(v, v);
  } else if (axis == "p1") {
    s.p = make_param_pair(v, s.p.b);
  } else if (axis == "p2") {
    s.p = make_param_pair(s.p.a, v);
  } else if (axis == "q") {
    s.q = make_param_pair(v, v);
  } else if (axis == "q1") {
    s.q = make_param_pair(v, s.q.b);
  } else if (axis == "q2") {
    s.q = make_param_pair(s.q.a, v);
  } else if (axis == "eps-box") {
    s.box_hi = Pair2{v, v};
  } else {
    fail(Errc::InvalidAxis, "unknown sweep axis '" + axis + "'");
  }
}

std::string monotone_flag(const std::vector<double>& v) {
  bool up = true, down = true;
  std::optional<double> prev;
  for (double x : v) {
    if (!std::isfinite(x)) continue;
    if (prev) {
      const double slack = 1e-12 * std::max(std::fabs(x), std::fabs(*prev));
      if (x > *prev + slack) down = false;
      if (x < *prev - slack) up = false;
    }
    prev = x;
  }
  if (up && down) return "constant";
  if (down) return "non-increasing";
  if (up) return "non-decreasing";
  return "neither";
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const NormSpec base = spec_of(o);
  {
    NormSpec probe = base;
    set_axis(probe, o.axis, o.from);
  }
  if (o.steps == 0 || o.from > o.to || (o.steps > 1 && o.from == o.to))
    fail(Errc::InvalidArgument, "empty sweep range");
  const Rearrangement2D f = function_of(o);
  std::vector<double> xs, values;
  std::vector<std::string> status;
  bool all_ok = true;
  for (std::size_t i = 0; i < o.steps; ++i) {
    const double x = o.steps == 1 ? o.from : o.from + (o.to - o.from) * static_cast<double>(i) / (o.steps - 1);
    xs.push_back(x);
    NormSpec s = base;
    try {
      set_axis(s, o.axis, x);
      const NormResult r = s.evaluate(f);
      values.push_back(r.value);
      status.push_back(r.converged ? "converged" : "not converged");
      all_ok = all_ok && r.converged;
    } catch (const Error& e) {
      if (e.code() == Errc::InvalidAxis) throw;
      values.push_back(std::nan(""));
      status.push_back(std::string("error: ") + to_string(e.code()));
      all_ok = false;
    }
  }
  const std::string flag = monotone_flag(values);
  if (o.format == "csv") {
    std::string t = o.axis + ",value,status\n";
    for (std::size_t i = 0; i < xs.size(); ++i) t += csv_number(xs[i]) + "," + csv_number(values[i]) + "," + status[i] + "\n";
    t += "# value column: " + flag + "\n";
    emit(o, t, out);
  } else {
    Json j;
    j["command"] = "sweep";
    j["function"] = function_json(o);
    j["norm"] = base.to_json();
    j["axis"] = o.axis;
    auto rows = Json::array();
    for (std::size_t i = 0; i < xs.size(); ++i)
      rows.push_back({{o.axis, json_number(xs[i])}, {"value", json_number(values[i])}, {"status", status[i]}});
    j["rows"] = rows;
    j["value_monotonicity"] = flag;
    emit(o, j.dump(2) + "\n", out);
  }
  return all_ok ? kOk : kDiverged;
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Pass: return kOk;
    case Verdict::Inconclusive: return kInconclusive;
    case Verdict::Diverged:
    case Verdict::Violated: return kDiverged;
  }
  return kDiverged;
}

int cmd_verify(const Options& o, std::ostream& out) {
  VerifyConfig cfg;
  cfg.levels = o.levels;
  cfg.threads = o.threads;
  cfg.grid = grid_of(o);
  cfg.search = search_of(o);
  cfg.trunc.depth = o.depth;
  cfg.trunc.validate();
  const ParamPair p = parse_param_pair(o.p);
  const ParamPair q = o.q.empty() ? p : parse_param_pair(o.q);
  const ThetaPair theta = parse_theta_pair(o.theta);
  auto pair_or = [](const std::string& text, const std::string& fallback) {
    return parse_param_pair(text.empty() ? fallback : text);
  };
  auto theta_or = [](const std::string& text, const ThetaPair& fallback) {
    return text.empty() ? fallback : parse_theta_pair(text);
  };

  Json j;
  j["command"] = "verify";
  j["theorem"] = o.theorem;
  Json args;
  args["p"] = o.p;
  args["q"] = o.q.empty() ? o.p : o.q;
  args["theta"] = o.theta;
  for (auto [k, v] : {std::pair<const char*, const std::string*>{"s", &o.s},
                      {"r", &o.r},
                      {"delta", &o.delta},
                      {"tau", &o.tau},
                      {"lambda", &o.lambda}})
    if (!v->empty()) args[k] = *v;
  args["family"] = o.family;
  j["args"] = args;
  j["config"] = to_json(cfg);

  int code = kOk;
  const std::string& t = o.theorem;
  if (t == "Example1") {
    const auto d = verify_example1_detail(p, pair_or(o.r, "1,1"), theta, theta_or(o.delta, {0.5, 0.5}), cfg);
    j["report"] = to_json(d);
    code = d.member ? kOk : kDiverged;
  } else {
    const TestFamily family = family_by_name(o.family);
    if (t == "T1") {
      const auto rep = verify_theorem1(p, q, theta, family, cfg);
      j["report"] = to_json(rep);
      code = exit_for(rep.verdict());
    } else {
      EmbeddingReport rep;
      if (t == "T2")
        rep = verify_theorem2(p, theta, family, cfg);
      else if (t == "T3")
        rep = verify_theorem3(p, q, theta, theta_or(o.s, theta), family, cfg);
      else if (t == "T4")
        rep = verify_theorem4(p, q, pair_or(o.r, o.q.empty() ? o.p : o.q), theta, family, cfg);
      else if (t == "T5") {
        const ParamPair d = pair_or(o.delta, "0.5,0.5");
        rep = verify_theorem5(p, q, theta, {d.a, d.b}, family, cfg);
      } else if (t == "T6")
        rep = verify_theorem6(p, q, pair_or(o.tau, "2,2"), theta, theta_or(o.lambda, theta), family, cfg);
      else if (t == "T7")
        rep = verify_theorem7(p, pair_or(o.tau, "1,1"), theta, family, cfg);
      else
        fail(Errc::Parse, "unknown theorem '" + t + "' (T1..T7, Example1)");
      j["report"] = to_json(rep);
      code = exit_for(rep.verdict);
    }
  }
  emit(o, j.dump(2) + "\n", out);
  return code;
}

void add_common(CLI::App* c, Options& o) {
  c->add_option("--t-min", o.t_min, "smallest t of the log grid");
  c->add_option("--t-max", o.t_max, "largest t of the log grid");
  c->add_option("--nodes", o.nodes, "log-grid nodes per axis");
  c->add_option("--rel-tol", o.rel_tol, "accepted relative tail below t_min");
  c->add_option("--rule", o.rule, "trapezoid or midpoint");
  c->add_option("--coarse", o.coarse, "coarse epsilon nodes per axis");
  c->add_option("--iterations", o.iterations, "golden-section iterations");
  c->add_option("--depth", o.depth, "dyadic truncation depth");
  c->add_option("--p", o.p, "p1,p2");
  c->add_option("--q", o.q, "q1,q2 (default: p)");
  c->add_option("--theta", o.theta, "theta1,theta2");
  c->add_option("--tau", o.tau, "tau1,tau2");
  c->add_option("--output,-o", o.output, "write the report here instead of stdout");
}

void add_function(CLI::App* c, Options& o) {
  c->add_option("--csv", o.csv, "grid CSV file (first line N1,N2)");
  c->add_option("--analytic", o.analytic,
                "constant=c | indicator=a1,a2[,h] | example1=p1,p2,r1,r2,th1,th2,d1,d2 | powerlog=s,a1,a2,b1,b2");
  c->add_option("--space", o.space, "lorentz, weak_lorentz, grand, log_weight_weak, log_weight_integral, dyadic_grand");
  c->add_option("--variant", o.variant, "guarded or literal (log_weight_weak)");
  c->add_option("--side", o.side, "upper or lower (log_weight_integral)");
  c->add_option("--box-hi", o.box_hi, "upper corner of the epsilon box (grand)");
  c->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Anisotropic grand Lorentz norms: evaluation and embedding checks", "gl_cli"};
  app.require_subcommand(1);
  CLI::App* norm = app.add_subcommand("norm", "evaluate one norm of one function");
  add_common(norm, o);
  add_function(norm, o);
  CLI::App* sweep = app.add_subcommand("sweep", "tabulate a norm against one parameter");
  add_common(sweep, o);
  add_function(sweep, o);
  sweep->add_option("--axis", o.axis, "theta, theta1, theta2, p, p1, p2, q, q1, q2, eps-box")->required();
  sweep->add_option("--from", o.from, "first parameter value");
  sweep->add_option("--to", o.to, "last parameter value");
  sweep->add_option("--steps", o.steps, "number of rows");
  CLI::App* verify = app.add_subcommand("verify", "run an embedding or membership check");
  add_common(verify, o);
  verify->add_option("theorem", o.theorem, "T1, T2, T3, T4, T5, T6, T7 or Example1")->required();
  verify->add_option("--s", o.s, "target theta (T3)");
  verify->add_option("--r", o.r, "second fine index (T4) or Example 1 r");
  verify->add_option("--delta", o.delta, "restricted box (T5) or Example 1 delta");
  verify->add_option("--lambda", o.lambda, "target theta (T6)");
  verify->add_option("--family", o.family, "constants, indicators, dyadic_steps, example1 or all");
  verify->add_option("--levels", o.levels, "refinement levels for the stability check");
  verify->add_option("--threads", o.threads, "worker threads (0: GL_THREADS or all cores)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*norm) return cmd_norm(o, out);
    if (*sweep) return cmd_sweep(o, out);
    return cmd_verify(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace gl::cli
