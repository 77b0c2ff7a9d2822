#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cuecomb/cli.hpp"

using namespace cuecomb;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "cuecomb");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("cuecomb_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("exact and infer at the origin") {
  const auto dir = scratch("exact");
  const auto e = call({"exact", "--out", dir.string()});
  CHECK(e.code == 0);
  CHECK(e.out.find("0.5124") != std::string::npos);
  CHECK(fs::exists(dir / "exact_posterior.csv"));

  const auto i = call({"infer", "--out", dir.string()});
  REQUIRE(i.code == 0);
  const auto pos = i.out.find("= ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::fabs(std::stod(i.out.substr(pos + 2)) - 0.5124) < 0.02);
}

TEST_CASE("exp2 smoke run") {
  const auto dir = scratch("smoke");
  const auto start = std::chrono::steady_clock::now();
  const auto r = call({"exp2", "--out", dir.string(), "--set", "n_trials=10", "--set", "repetitions=1",
                       "--set", "sample_sizes=10,100"});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  REQUIRE(r.code == 0);
  CHECK(secs < 5.0);
  std::ifstream in(dir / "exp2_summary.csv");
  std::string line;
  int data_rows = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    ++data_rows;
  }
  CHECK(data_rows == 2);
}

TEST_CASE("seed flag overrides the file and is echoed") {
  const auto dir = scratch("seed");
  const auto cfg = dir / "run.conf";
  fs::create_directories(dir);
  std::ofstream(cfg) << "seed = 5\nn_trials = 5\nrepetitions = 1\nsample_sizes = 10\n";
  REQUIRE(call({"exp2", "--config", cfg.string(), "--seed", "123", "--out", dir.string()}).code == 0);
  CHECK(slurp(dir / "exp2_summary.csv").find("# seed: 123\n") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == 1);
  CHECK(call({"exp9"}).code == 1);
  CHECK(call({"exp2", "--jobs", "0"}).code == 1);
  CHECK(call({"exp2", "--seed", "-4"}).code == 1);
  CHECK(call({"exp2", "--preset", "missing"}).code == 2);
  CHECK(call({"exp2", "--set", "sigma_1=-2"}).code == 2);
  CHECK(call({"exp2", "--config", "/nonexistent/file.conf"}).code == 2);
  const auto bad = call({"exact", "--set", "model_kind=multi_cue", "--set", "sigmas=1,2,3"});
  CHECK(bad.code == 3);
  CHECK(bad.err.find("exact") != std::string::npos);
  CHECK(call({"--help"}).code == 0);
  CHECK(call({"--list-presets"}).out.find("exp1\n") != std::string::npos);
}

TEST_CASE("output is byte-identical across worker counts") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  const std::vector<std::string> common{"--set", "n_trials=30", "--set", "repetitions=2", "--set",
                                        "sample_sizes=10,200"};
  auto args_a = std::vector<std::string>{"exp2", "--out", a.string(), "--jobs", "1"};
  auto args_b = std::vector<std::string>{"exp2", "--out", b.string(), "--jobs", "4"};
  args_a.insert(args_a.end(), common.begin(), common.end());
  args_b.insert(args_b.end(), common.begin(), common.end());
  REQUIRE(call(args_a).code == 0);
  REQUIRE(call(args_b).code == 0);
  for (const char* f : {"exp2_summary.csv", "exp2_per_repetition.csv", "exp2_trials.csv"})
    CHECK(slurp(a / f) == slurp(b / f));
}
