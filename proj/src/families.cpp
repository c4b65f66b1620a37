#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "gl/error.hpp"
#include "gl/verify.hpp"

namespace gl {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

struct StepMember {
  std::vector<double> e1, e2;
  Matrix values;
};

std::vector<double> dyadic_edges(std::mt19937_64& rng, std::size_t cells) {
  // Exponents 0 = k_0 < k_1 < ... with gaps in {1, 2, 3}; edges 2^{-k} ascending.
  std::vector<int> k{0};
  for (std::size_t i = 1; i < cells; ++i) k.push_back(k.back() + 1 + static_cast<int>(rng() % 3));
  std::vector<double> e;
  for (auto it = k.rbegin(); it != k.rend(); ++it) e.push_back(std::ldexp(1.0, -*it));
  return e;
}

StepMember make_step(std::uint64_t seed, std::size_t index) {
  std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
  StepMember m;
  m.e1 = dyadic_edges(rng, 2 + rng() % 5);
  m.e2 = dyadic_edges(rng, 2 + rng() % 5);
  const std::size_t n1 = m.e1.size(), n2 = m.e2.size();
  m.values = Matrix(n2, n1);
  for (std::size_t b2 = n2; b2-- > 0;)
    for (std::size_t b1 = n1; b1-- > 0;) {
      double lo = 0.0;
      if (b1 + 1 < n1) lo = std::max(lo, m.values(b2, b1 + 1));
      if (b2 + 1 < n2) lo = std::max(lo, m.values(b2 + 1, b1));
      // The cell touching t = (1,1) may be zero; every other cell stays positive.
      const double inc = unit_uniform(rng());
      m.values(b2, b1) = (b1 + 1 == n1 && b2 + 1 == n2 && inc < 0.25) ? 0.0 : lo + inc;
    }
  return m;
}

}  // namespace

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1p-53; }

TestFamily constants_family() {
  static const std::vector<double> cs{0.1, 0.25, 0.5, 1, 1.5, 2, 3, 4, 8, 10};
  TestFamily f;
  f.name = "constants";
  f.description = "r = c on (0,1]^2";
  for (double c : cs) f.labels.push_back("constant(" + fmt(c) + ")");
  f.generate = [](std::size_t i) { return Rearrangement2D::constant(cs.at(i)); };
  return f;
}

TestFamily indicators_family() {
  static const std::vector<int> k1{1, 4, 8}, k2{1, 3, 6, 10};
  TestFamily f;
  f.name = "indicators";
  f.description = "indicator of [0,2^-k1] x [0,2^-k2]";
  for (int a : k1)
    for (int b : k2) f.labels.push_back("indicator(2^-" + std::to_string(a) + ",2^-" + std::to_string(b) + ")");
  f.generate = [](std::size_t i) {
    const int a = k1.at(i / k2.size()), b = k2.at(i % k2.size());
    return Rearrangement2D::indicator(std::ldexp(1.0, -a), std::ldexp(1.0, -b));
  };
  return f;
}

TestFamily dyadic_steps_family(std::uint64_t seed, std::size_t count) {
  TestFamily f;
  f.name = "dyadic_steps";
  f.description = "random non-increasing levels on random dyadic partitions, seed " + std::to_string(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const StepMember m = make_step(seed, i);
    f.labels.push_back("step#" + std::to_string(i) + "(" + std::to_string(m.e1.size()) + "x" +
                       std::to_string(m.e2.size()) + ")");
  }
  f.generate = [seed](std::size_t i) {
    StepMember m = make_step(seed, i);
    return Rearrangement2D::step(std::move(m.e1), std::move(m.e2), std::move(m.values));
  };
  return f;
}

TestFamily example1_family(const ParamPair& p, const ParamPair& r, const std::vector<double>& thetas,
                           const std::vector<double>& deltas) {
  struct Point {
    double theta, delta;
  };
  std::vector<Point> pts;
  for (double th : thetas)
    for (double d : deltas) {
      const bool ok = th - 1 / r.a - d >= 0 && th - 1 / r.b - d >= 0;
      if (ok) pts.push_back({th, d});
    }
  TestFamily f;
  f.name = "example1";
  f.description = "t^{-1/p} |ln t|^{theta - 1/r - delta} per axis, p=" + to_string(p) + ", r=" + to_string(r);
  for (const auto& pt : pts) f.labels.push_back("example1(theta=" + fmt(pt.theta) + ",delta=" + fmt(pt.delta) + ")");
  f.generate = [p, r, pts](std::size_t i) {
    const Point& pt = pts.at(i);
    return analytic_example1(p, r, {pt.theta, pt.theta}, {pt.delta, pt.delta});
  };
  return f;
}

std::vector<TestFamily> registered_families() {
  return {constants_family(), indicators_family(), dyadic_steps_family(), example1_family()};
}

TestFamily combine_families(const std::vector<TestFamily>& parts, std::string name) {
  TestFamily f;
  f.name = std::move(name);
  std::vector<std::pair<std::size_t, std::size_t>> where;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (!f.description.empty()) f.description += "; ";
    f.description += parts[k].name;
    for (std::size_t i = 0; i < parts[k].count(); ++i) {
      f.labels.push_back(parts[k].labels[i]);
      where.emplace_back(k, i);
    }
  }
  f.generate = [parts, where](std::size_t i) {
    const auto [k, j] = where.at(i);
    return parts[k].generate(j);
  };
  return f;
}

TestFamily family_by_name(const std::string& name) {
  if (name == "constants") return constants_family();
  if (name == "indicators") return indicators_family();
  if (name == "dyadic_steps" || name == "steps") return dyadic_steps_family();
  if (name == "example1") return example1_family();
  if (name == "all") return combine_families(registered_families(), "all");
  fail(Errc::Parse, "unknown family '" + name + "'");
}

}  // namespace gl
