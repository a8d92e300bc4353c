#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "webs/presets.hpp"
#include "webs/run.hpp"

using namespace webs;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("webs_test_" + name);
  fs::remove_all(d);
  return d;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("run configuration validation") {
  RunConfig c;
  c.problem = "poisson1d";
  CHECK_THROWS_AS(c.validate(), Error);
  c.h_list = {0.25, -0.1};
  CHECK_THROWS_AS(c.validate(), Error);
  c.h_list = {0.25};
  c.validate();
  c.order = 1;
  CHECK_THROWS_AS(c.validate(), Error);
  c.order = 3;
  c.threads = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c.threads = 1;
  c.solver.tol = 0.0;
  CHECK_THROWS_AS(c.validate(), Error);
  std::ostringstream log;
  c.output_dir = scratch_dir("invalid").string();
  CHECK(run(c, log) == 2);
  CHECK(log.str().find("error") != std::string::npos);
}

TEST_CASE("poisson1d run") {
  RunConfig c;
  c.problem = "poisson1d";
  c.h_list = {0.25};
  c.output_dir = scratch_dir("poisson").string();
  std::ostringstream log;
  CHECK(run(c, log) == 0);
  const auto t = lines(slurp(fs::path(c.output_dir) / "table.csv"));
  REQUIRE(t.size() == 2);
  CHECK(t[0] == "h,dofs,iterations,eps_res,upper,lower,energy_error");
  double h, eps, energy;
  int dofs, it;
  char up[64], lo[64];
  REQUIRE(std::sscanf(t[1].c_str(), "%lf,%d,%d,%lf,%63[^,],%63[^,],%lf", &h, &dofs, &it, &eps, up, lo, &energy) == 7);
  CHECK(h == 0.25);
  CHECK(eps < 1e-2);
  CHECK(std::abs(energy) < 1e-2);
  CHECK(std::string(up) == "nan");
  const std::string summary = slurp(fs::path(c.output_dir) / "summary.csv");
  CHECK(summary.find("problem,poisson1d") != std::string::npos);
  CHECK(summary.find("h0.25.status,Converged") != std::string::npos);
}

TEST_CASE("rows descend in h and runs are reproducible") {
  RunConfig c;
  c.problem = "coupled_smooth";
  c.h_list = {0.25, 0.5};
  c.estimate = true;
  c.emit_fields = true;
  std::ostringstream log;
  c.output_dir = scratch_dir("repro_a").string();
  REQUIRE(run(c, log) == 0);
  const fs::path a = c.output_dir;
  c.output_dir = scratch_dir("repro_b").string();
  REQUIRE(run(c, log) == 0);
  const fs::path b = c.output_dir;
  for (const char* f : {"table.csv", "summary.csv", "fields_h0.5.csv", "fields_h0.25.csv"}) {
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  const auto t = lines(slurp(a / "table.csv"));
  REQUIRE(t.size() == 3);
  CHECK(t[1].rfind("0.5,", 0) == 0);
  CHECK(t[2].rfind("0.25,", 0) == 0);
  const auto fields = lines(slurp(a / "fields_h0.5.csv"));
  CHECK(fields[0] == "x,y,u1,u2,r1,r2");
  CHECK(fields.size() > 100);
}

TEST_CASE("thread count does not change results") {
  RunConfig c;
  c.problem = "dirichlet_neumann";
  c.h_list = {0.25};
  c.estimate = true;
  std::ostringstream log;
  const auto p = make_preset(c.problem);
  const auto one = run_levels(c, p, log);
  c.threads = 3;
  const auto three = run_levels(c, p, log);
  CHECK(one[0].eps_res == three[0].eps_res);
  CHECK(one[0].upper == three[0].upper);
  CHECK(one[0].energy_error == three[0].energy_error);
}

TEST_CASE("estimator failures leave NaN and a diagnostic") {
  RunConfig c;
  c.problem = "population";
  c.h_list = {0.5};
  c.estimate = true;
  std::ostringstream log;
  const auto rows = run_levels(c, make_preset(c.problem), log);
  REQUIRE(rows.size() == 1);
  CHECK(std::isnan(rows[0].upper));
  CHECK(std::isfinite(rows[0].eps_res));
  CHECK(log.str().find("NonEllipticDiffusion") != std::string::npos);
}
