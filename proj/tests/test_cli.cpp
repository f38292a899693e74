#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ignifront/cli.hpp"
#include "ignifront/error.hpp"

using namespace ignifront;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ignifront_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  int code = 0;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ignifront");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream err, out;
  auto* old_err = std::cerr.rdbuf(err.rdbuf());
  auto* old_out = std::cout.rdbuf(out.rdbuf());
  const int code = cli::run(static_cast<int>(argv.size()), argv.data());
  std::cerr.rdbuf(old_err);
  std::cout.rdbuf(old_out);
  return {code, err.str()};
}

const char* const kBaseConfig = "# base set\nq = 1\nh = 0.3\ntheta_ig = 0.1\ntheta_hl = 0.2\n";
const char* const kAltConfig = "q=1\nh=0.3\ntheta_ig=0.2\ntheta_hl=0.25\n";

}  // namespace

TEST_CASE("config parsing") {
  const cli::Settings s = cli::parse_config_text("a = 1  # note\n\n# only comment\nb=2.5\n");
  CHECK(s.size() == 2);
  CHECK(s.at("a") == "1");
  CHECK(s.at("b") == "2.5");
  CHECK_THROWS_AS(cli::parse_config_text("no equals sign\n"), Error);
  CHECK_THROWS_AS(cli::parse_config_text("=3\n"), Error);

  cli::Settings ok = cli::parse_config_text(kBaseConfig);
  const cli::RunConfig cfg = cli::make_run_config("solve", ok, "x");
  CHECK(cfg.params.theta_hl == 0.2);
  CHECK(cfg.params.theta_plus == doctest::Approx(0.44279797597104105));

  cli::Settings unknown = ok;
  unknown["bogus"] = "1";
  CHECK_THROWS_AS(cli::make_run_config("solve", unknown, "x"), Error);
  cli::Settings missing = ok;
  missing.erase("h");
  CHECK_THROWS_AS(cli::make_run_config("solve", missing, "x"), Error);
  cli::Settings nan = ok;
  nan["q"] = "abc";
  CHECK_THROWS_AS(cli::make_run_config("solve", nan, "x"), Error);
  cli::Settings bad_n = ok;
  bad_n["phi.n"] = "2.5";
  CHECK_THROWS_AS(cli::make_run_config("phi", bad_n, "x"), Error);
}

TEST_CASE("solve writes front.json and profile.csv") {
  const fs::path dir = scratch("solve");
  const fs::path cfg = write_config(dir, "base.cfg", kBaseConfig);
  const Outcome o = run_cli({"solve", "--config", cfg.string(), "--out", (dir / "out").string()});
  REQUIRE(o.code == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "front.json"));
  CHECK(j["status"] == "ok");
  const double R = j["R_star"].get<double>();
  const double c = j["c_star"].get<double>();
  CHECK(c * 0.2 - 1.0 * R > 0.0);
  CHECK(std::abs(c - 2.93612956272135) <= 1e-7);
  const std::string profile = slurp(dir / "out" / "profile.csv");
  CHECK(profile.rfind("x,theta,theta_x\n", 0) == 0);
  CHECK(std::count(profile.begin(), profile.end(), '\n') > 100);
}

TEST_CASE("phi writes the critical point") {
  const fs::path dir = scratch("phi");
  const fs::path cfg = write_config(dir, "alt.cfg", kAltConfig);
  REQUIRE(run_cli({"phi", "--config", cfg.string(), "--out", dir.string(), "--set", "phi.n=32"})
              .code == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "critical.json"));
  CHECK(std::abs(j["c_tilde"].get<double>() - 1.0) <= 1e-12);
  CHECK(std::abs(j["b"].get<double>() - std::sqrt(5.0)) <= 1e-12);
  const std::string phi = slurp(dir / "phi.csv");
  CHECK(phi.rfind("R,c,residual\n", 0) == 0);
  CHECK(std::count(phi.begin(), phi.end(), '\n') == 33);
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("codes");
  const fs::path bad = write_config(dir, "bad.cfg", "q=1\nh=0.3\ntheta_ig=0.1\ntheta_hl=0.5\n");
  const Outcome o = run_cli({"solve", "--config", bad.string(), "--out", dir.string()});
  CHECK(o.code == 1);
  CHECK(o.err.find("OrderingViolated") != std::string::npos);
  CHECK(o.err.find("theta_hl < theta_plus") != std::string::npos);
  CHECK(std::count(o.err.begin(), o.err.end(), '\n') == 1);

  CHECK(run_cli({"solve"}).code == 1);
  CHECK(run_cli({"frobnicate", "--config", bad.string()}).code == 1);
  CHECK(run_cli({"solve", "--config", (dir / "absent.cfg").string()}).code == 1);

  // A numerical failure maps to exit 2 and still leaves a schema-complete file.
  const fs::path base_cfg = write_config(dir, "base.cfg", kBaseConfig);
  const Outcome num =
      run_cli({"pde-check", "--config", base_cfg.string(), "--out", (dir / "pde").string(), "--set",
               "pde.L=0.5", "--set", "pde.dx=0.02", "--set", "comoving.T=0"});
  CHECK(num.code == 2);
  const auto j = nlohmann::json::parse(slurp(dir / "pde" / "report.json"));
  CHECK(j["status"] == "failed");
  CHECK(j["error"]["code"] == "FrontLeftDomain");
  CHECK(j.contains("lab_frame"));
  CHECK(j["lab_frame"]["c_measured"].is_null());
  CHECK(fs::exists(dir / "pde" / "series.csv"));
}

TEST_CASE("outputs are byte-identical across runs") {
  const fs::path dir = scratch("determinism");
  const fs::path cfg = write_config(dir, "base.cfg", std::string(kBaseConfig) + "melnikov.n = 4\n");
  for (const char* cmd : {"solve", "psi", "melnikov", "portrait"}) {
    REQUIRE(run_cli({cmd, "--config", cfg.string(), "--out", (dir / "a").string(), "--set",
                     "psi.n=8"})
                .code == 0);
    REQUIRE(run_cli({cmd, "--config", cfg.string(), "--out", (dir / "b").string(), "--set",
                     "psi.n=8"})
                .code == 0);
  }
  int files = 0;
  for (const auto& e : fs::directory_iterator(dir / "a")) {
    CHECK(slurp(e.path()) == slurp(dir / "b" / e.path().filename()));
    ++files;
  }
  CHECK(files == 7);
  const std::string mel = slurp(dir / "a" / "melnikov.csv");
  CHECK(mel.rfind("c,v_hl,dv_dc_melnikov,dv_dc_fd,rel_err\n", 0) == 0);
}

TEST_CASE("IGNIFRONT_OUT selects the output directory") {
  const fs::path dir = scratch("env");
  const fs::path cfg = write_config(dir, "alt.cfg", kAltConfig);
  const fs::path target = dir / "from_env";
  ::setenv("IGNIFRONT_OUT", target.c_str(), 1);
  const Outcome o = run_cli({"phi", "--config", cfg.string(), "--set", "phi.n=8"});
  ::unsetenv("IGNIFRONT_OUT");
  CHECK(o.code == 0);
  CHECK(fs::exists(target / "critical.json"));
  CHECK(fs::exists(target / "phi.csv"));
}

TEST_CASE("pde-check on a coarse grid") {
  const fs::path dir = scratch("pde");
  const fs::path cfg = write_config(dir, "base.cfg", kBaseConfig);
  const Outcome o =
      run_cli({"pde-check", "--config", cfg.string(), "--out", dir.string(), "--set",
               "pde.dx=0.02", "--set", "comoving.dx=0.02", "--set", "comoving.T=1"});
  REQUIRE(o.code == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(j["status"] == "ok");
  CHECK(j["lab_frame"]["rel_err"].get<double>() <= 0.02);
  CHECK(j["comoving"]["drift"].get<double>() <= 5e-3);
  CHECK(slurp(dir / "series.csv").rfind("t,x_ig\n", 0) == 0);
}
