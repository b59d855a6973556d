#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sqdeph/cli.hpp"
#include "sqdeph/config.hpp"

using namespace sqdeph;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "sqdeph");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("gamma subcommand") {
  const auto r = run({"gamma", "--t", "1", "--eta", "0.6", "--s", "2", "--r", "0", "--theta", "0"});
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(0.3).epsilon(1e-12));
  const auto q = run({"gamma", "--t", "1", "--eta", "0.6", "--s", "2", "--method", "quadrature"});
  CHECK(q.code == 0);
  CHECK(std::stod(q.out) == doctest::Approx(0.3).epsilon(1e-9));
  const auto thermal = run({"gamma", "--t", "1", "--eta", "0.6", "--s", "2", "--temperature", "1.4426950408889634"});
  CHECK(std::stod(thermal.out) == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("qfi subcommand") {
  const auto a = run({"qfi", "--t", "1", "--eta", "0.6", "--s", "2", "--param", "alpha"});
  CHECK(a.code == 0);
  CHECK(std::stod(a.out) == doctest::Approx(1.0).epsilon(1e-9));
  const auto p = run({"qfi", "--t", "1", "--eta", "0.6", "--s", "2", "--nu", "100"});
  CHECK(p.code == 0);
  CHECK(std::stod(p.out) == doctest::Approx(std::exp(-0.6)).epsilon(1e-12));
  CHECK(p.out.find("cramer_rao_bound") != std::string::npos);
  CHECK(p.out.find("nu=100") != std::string::npos);
  const auto c = run({"qfi", "--t", "1", "--eta", "0.6", "--s", "2", "--derivative", "central"});
  CHECK(std::stod(c.out) == doctest::Approx(std::exp(-0.6)).epsilon(1e-6));
}

TEST_CASE("discrete subcommand") {
  const auto r = run({"discrete", "--t", "1", "--eta", "0.6", "--s", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("discrete 0.3") != std::string::npos);
  CHECK(r.out.find("rel_deviation") != std::string::npos);
}

TEST_CASE("argument errors exit 1 and name the flag") {
  auto r = run({"gamma", "--t", "1", "--eta", "0.6", "--s", "2", "--bogus", "3"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--bogus") != std::string::npos);
  r = run({"gamma", "--t", "1", "--eta", "-0.6", "--s", "2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--eta") != std::string::npos);
  r = run({"gamma", "--t", "1", "--eta", "0.6"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--s") != std::string::npos);
  r = run({"qfi", "--t", "1", "--eta", "0.6", "--s", "2", "--alpha", "4"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--alpha") != std::string::npos);
  r = run({"sweep", "--axis1", "r:0:1", "--axis2", "t:0:1:3", "--eta", "0.6", "--s", "2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--axis1") != std::string::npos);
  CHECK(run({}).code == 1);
}

TEST_CASE("help exits 0") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("sweep") != std::string::npos);
}

TEST_CASE("numerical failure exits 2") {
  const auto r = run({"verify", "--threshold", "1e-30", "--jobs", "2"});
  CHECK(r.code == 2);
  CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("sweep from flags, config dump and reload") {
  const auto dir = std::filesystem::temp_directory_path() / "sqdeph_test_cli";
  std::filesystem::create_directories(dir);
  const auto ini = (dir / "sweep.ini").string();
  const auto csv = (dir / "out.csv").string();

  const auto first = run({"sweep", "--quantity", "qfi_phi", "--eta", "0.6", "--s", "2", "--axis1", "r:0:1:3", "--axis2",
                          "t:0:10:4", "--dump-config", ini, "--jobs", "2"});
  REQUIRE(first.code == 0);
  CHECK(first.out.rfind("axis1,axis2,value\n", 0) == 0);

  const auto spec = load_sweep_config(ini);
  CHECK(spec.axis1.points == 3);
  CHECK(spec.fixed.at("eta") == 0.6);
  CHECK(!spec.fixed.contains("r"));

  const auto second = run({"sweep", "--config", ini, "--out", csv});
  REQUIRE(second.code == 0);
  std::ifstream in(csv, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == first.out);

  const auto svg = run({"sweep", "--config", ini, "--format", "svg-lines"});
  CHECK(svg.out.find("<svg") != std::string::npos);
  std::filesystem::remove_all(dir);
}
