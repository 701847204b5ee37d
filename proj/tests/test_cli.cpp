#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(TKSGD_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("tksgd_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("run writes CSV and JSON") {
  const auto dir = scratch("run");
  CHECK(run("run --preset example1 --override n_max=1000 --out-dir " + dir.string()) == 0);
  CHECK(fs::exists(dir / "example1.csv"));
  CHECK(fs::exists(dir / "example1.json"));
  CHECK(slurp(dir / "example1.csv").rfind("n,error,log10_n,log10_error,cum_work,storage\n", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("config file input") {
  const auto dir = scratch("config");
  fs::create_directories(dir);
  std::ofstream(dir / "c.json") << R"({"name": "tiny", "d": 3, "kernel": "general", "target": "s2_poly",
    "n_max": 200, "noise": {"kind": "normal", "variance": 1.0}})";
  CHECK(run("run --config " + (dir / "c.json").string() + " --out-dir " + dir.string()) == 0);
  CHECK(fs::exists(dir / "tiny.csv"));
  std::ofstream(dir / "bad.json") << R"({"name": "x", "bogus": 1})";
  CHECK(run("run --config " + (dir / "bad.json").string() + " --out-dir " + dir.string()) == 1);
  fs::remove_all(dir);
}

TEST_CASE("errors exit with status 1") {
  CHECK(run("run --preset nope") == 1);
  CHECK(run("run") == 1);
  CHECK(run("frobnicate") == 1);
  CHECK(run("run --preset example1 --override nope=1") == 1);
}

TEST_CASE("sweep") {
  const auto dir = scratch("sweep");
  CHECK(run("sweep --preset example1 --vary theta=0.2,0.3 --override n_max=300 --out-dir " + dir.string()) == 0);
  CHECK(fs::exists(dir / "example1__theta_0.2.csv"));
  CHECK(fs::exists(dir / "example1__theta_0.3.json"));
  fs::remove_all(dir);
}

TEST_CASE("verify and presets") {
  CHECK(run("verify") == 0);
  CHECK(run("presets") == 0);
}
