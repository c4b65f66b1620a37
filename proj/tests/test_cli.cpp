#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gl/cli.hpp"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gl::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parsed(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("norm of closed forms") {
  auto one = run({"norm", "--analytic", "constant=1", "--space", "lorentz", "--p", "2,2", "--q", "2,2"});
  CHECK(one.code == gl::cli::kOk);
  auto j = parsed(one);
  CHECK(std::fabs(j["result"]["value"].get<double>() - 1) < 1e-6);
  CHECK(j["norm"]["space"] == "lorentz");
  CHECK(j["function"]["analytic"] == "constant=1");

  auto ind = run({"norm", "--analytic", "indicator=0.25,0.25", "--space", "lorentz", "--p", "2,2", "--q", "2,2"});
  CHECK(ind.code == gl::cli::kOk);
  CHECK(std::fabs(parsed(ind)["result"]["value"].get<double>() - 0.25) < 1e-6);

  auto csv = run({"norm", "--analytic", "constant=1", "--space", "grand", "--p", "1,1", "--q", "1,1", "--theta", "1,1",
                  "--format", "csv"});
  CHECK(csv.code == gl::cli::kOk);
  CHECK(csv.out.rfind("value,converged,eps1,eps2\n0.25", 0) == 0);
}

TEST_CASE("norm input errors") {
  auto missing = run({"norm", "--csv", "/no/such/grid.csv"});
  CHECK(missing.code == gl::cli::kInputError);
  CHECK(missing.err.find("/no/such/grid.csv") != std::string::npos);
  CHECK(run({"norm"}).code == gl::cli::kInputError);
  CHECK(run({"norm", "--analytic", "square=1"}).code == gl::cli::kInputError);
  CHECK(run({"norm", "--analytic", "constant=1", "--p", "2,x"}).code == gl::cli::kInputError);
  CHECK(run({"norm", "--analytic", "constant=1", "--space", "nope"}).code == gl::cli::kInputError);
  CHECK(run({"frobnicate"}).code == gl::cli::kInputError);
  CHECK(run({"--help"}).code == gl::cli::kOk);
}

TEST_CASE("norm of a csv grid and divergence exit code") {
  const std::string path = "test_cli_grid.csv";
  {
    std::ofstream f(path);
    f << "2,2\n1,3\n2,0\n";
  }
  auto r = run({"norm", "--csv", path, "--space", "lorentz", "--p", "2,2", "--q", "2,2"});
  std::remove(path.c_str());
  REQUIRE(r.code == gl::cli::kOk);
  // Sorted grid rows 3,1 / 2,0 on half cells: sum of value^2 * 1/4.
  CHECK(std::fabs(parsed(r)["result"]["value"].get<double>() - std::sqrt((9 + 1 + 4) / 4.0)) < 1e-6);

  auto d = run({"norm", "--analytic", "powerlog=1,0.5,0.5,0,0", "--space", "lorentz", "--p", "2,2", "--q", "2,2"});
  CHECK(d.code == gl::cli::kDiverged);
}

TEST_CASE("output file") {
  const std::string path = "test_cli_out.json";
  auto r = run({"norm", "--analytic", "constant=2", "--output", path});
  CHECK(r.code == gl::cli::kOk);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  std::remove(path.c_str());
  CHECK(std::fabs(nlohmann::json::parse(s.str())["result"]["value"].get<double>() - 2) < 1e-6);
}

TEST_CASE("sweep") {
  auto r = run({"sweep", "--analytic", "constant=1", "--space", "grand", "--p", "1,1", "--q", "1,1", "--axis", "theta",
                "--from", "0", "--to", "2", "--steps", "9"});
  CHECK(r.code == gl::cli::kOk);
  auto j = parsed(r);
  CHECK(j["rows"].size() == 9);
  CHECK(j["value_monotonicity"] == "non-increasing");

  auto q = run({"sweep", "--analytic", "indicator=0.5,0.5", "--space", "lorentz", "--p", "2,2", "--axis", "q", "--from",
                "1", "--to", "4", "--steps", "4", "--format", "csv"});
  CHECK(q.code == gl::cli::kOk);
  CHECK(q.out.find("# value column: non-increasing") != std::string::npos);

  CHECK(run({"sweep", "--analytic", "constant=1", "--axis", "theta", "--from", "1", "--to", "0"}).code ==
        gl::cli::kInputError);
  CHECK(run({"sweep", "--analytic", "constant=1", "--axis", "theta", "--steps", "0"}).code == gl::cli::kInputError);
  auto bad = run({"sweep", "--analytic", "constant=1", "--axis", "zeta"});
  CHECK(bad.code == gl::cli::kInputError);
  CHECK(bad.err.find("InvalidAxis") != std::string::npos);
}

TEST_CASE("verify exit codes") {
  auto t1 = run({"verify", "T1", "--p", "2,2", "--q", "2,2", "--theta", "1,1", "--family", "indicators"});
  CHECK(t1.code == gl::cli::kOk);
  CHECK(parsed(t1)["report"]["verdict"] == "pass");

  CHECK(run({"verify", "T6"}).code == gl::cli::kInputError);
  CHECK(run({"verify", "T9"}).code == gl::cli::kInputError);
  CHECK(run({"verify", "T3", "--theta", "2,2", "--s", "1,1"}).code == gl::cli::kInputError);

  auto t7 = run({"verify", "T7", "--p", "1,1", "--tau", "1,1", "--theta", "1,1", "--family", "constants"});
  CHECK(t7.code == gl::cli::kOk);

  // Every member outside the right space: nothing to estimate.
  auto vac = run({"verify", "T1", "--p", "2,2", "--theta", "1,1", "--family", "example1"});
  CHECK(vac.code == gl::cli::kInconclusive);

  auto e1 = run({"verify", "Example1", "--p", "1,1", "--r", "1,1", "--theta", "2,2", "--delta", "0.5,0.5"});
  CHECK(e1.code == gl::cli::kOk);
  CHECK(parsed(e1)["report"]["member"] == true);
}

TEST_CASE("verify output is byte-identical across runs") {
  const std::vector<std::string> args = {"verify", "T4", "--p", "2,2", "--q", "1,1", "--r", "2,2",
                                         "--theta", "1,1", "--family", "indicators"};
  auto a = run(args), b = run(args);
  CHECK(a.code == gl::cli::kOk);
  CHECK(a.out == b.out);
}
