#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace cli = mamass::cli;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t c = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++c;
  return c;
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "mamass_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

const char* kRadial = "radial(profile=log,c=1)";

}  // namespace

TEST_CASE("help, version and usage errors") {
  CHECK(run({"--help"}).code == cli::kExitPass);
  Result v = run({"--version"});
  CHECK(v.code == cli::kExitPass);
  CHECK(v.out.find(cli::kToolVersion) != std::string::npos);
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"bogus"}).code == cli::kExitUsage);
  CHECK(run({"analyze", "--function", "radial(profile=log", "--dim", "1"}).code == cli::kExitUsage);
  CHECK(run({"analyze", "--function", kRadial, "--dim", "9"}).code == cli::kExitUsage);
  CHECK(run({"analyze", "--function", "smooth_poly(terms=[(1,[2,0],[0,0])])", "--dim", "1"}).code ==
        cli::kExitUsage);
  CHECK(run({"analyze", "--function", "loglinear(A=[[1,1],[0,1]])", "--dim", "2"}).code == cli::kExitUsage);
  CHECK(run({"verify", "--suite", "regularize", "--function", kRadial, "--dim", "2"}).code == cli::kExitUsage);
  CHECK(run({"verify", "--suite", "nonsense", "--function", kRadial, "--dim", "1"}).code == cli::kExitUsage);
}

TEST_CASE("constants and identities") {
  Result c = run({"constants", "--max-n", "3"});
  CHECK(c.code == cli::kExitPass);
  CHECK(c.out.find("24") != std::string::npos);
  CHECK(run({"constants", "--max-n", "0"}).code == cli::kExitUsage);

  Result j = run({"constants", "--max-n", "2", "--json"});
  REQUIRE(j.code == cli::kExitPass);
  json doc = json::parse(j.out);
  CHECK(doc["schema"] == cli::kSchema);
  CHECK(doc["C"] == json::array({"2", "7"}));
  CHECK(doc["B"] == json::array({"1", "1", "2", "5"}));

  CHECK(run({"identities", "--max-n", "4"}).code == cli::kExitPass);
  Result m = run({"identities", "--max-n", "3", "--mutate"});
  CHECK(m.code == cli::kExitCheckFailed);
}

TEST_CASE("analyze writes JSON, CSV and SVG") {
  auto dir = scratch_dir();
  auto jpath = dir / "radial.json", cpath = dir / "radial.csv", spath = dir / "radial.svg";
  Result r = run({"analyze", "--function", kRadial, "--dim", "1", "--json", jpath.string(), "--csv", cpath.string(),
                  "--svg", spath.string()});
  REQUIRE(r.code == cli::kExitPass);
  CHECK_FALSE(r.out.empty());

  json doc = json::parse(slurp(jpath));
  for (const char* key : {"schema", "tool_version", "command", "config", "nu", "lambda", "tau", "inequalities",
                          "checks", "quadrature", "pass"})
    CHECK_MESSAGE(doc.contains(key), key);
  CHECK(doc["schema"] == cli::kSchema);
  CHECK(doc["command"] == "analyze");
  CHECK(doc["pass"] == true);
  CHECK(doc["nu"]["extrapolated"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(doc["lambda"]["extrapolated"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(doc["tau"]["extrapolated"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  for (const auto& ineq : doc["inequalities"]) CHECK(ineq["verdict"] != "fail");

  std::string csv = slurp(cpath);
  CHECK(csv.rfind("t,boundary_mass,stderr,I_over_pin", 0) == 0);
  CHECK(count(csv, "\n") == 5);

  std::string svg = slurp(spath);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(count(svg, "<polyline") == 2);
}

TEST_CASE("reports are deterministic") {
  std::vector<std::string> args{"analyze", "--function", "monomial_ideal(m=[[1,0],[0,2]],w=[1,1])",
                                "--dim", "1", "--seed", "7"};
  Result a = run(args), b = run(args);
  REQUIRE(a.code == cli::kExitPass);
  CHECK(a.out == b.out);
  json doc = json::parse(a.out);
  CHECK(doc["config"]["seed"] == 7);
  CHECK(std::abs(doc["tau"]["extrapolated"].get<double>() - 2.0) <= 2e-2);
}

TEST_CASE("verify suites") {
  Result c = run({"verify", "--suite", "contact", "--dim", "2"});
  CHECK(c.code == cli::kExitPass);
  json doc = json::parse(c.out);
  CHECK(doc["command"] == "verify");
  CHECK(doc["pass"] == true);

  CHECK(run({"verify", "--suite", "mass-oracles", "--function", "lse_toric(a=[1,2],beta=2)", "--dim", "1",
             "--samples", "20000"})
            .code == cli::kExitPass);
  CHECK(run({"verify", "--suite", "energy", "--function", "monomial_ideal(m=[[1,0],[0,2]],w=[1,1])", "--dim", "1",
             "--t-grid", "-2,-4,-6,-8"})
            .code == cli::kExitPass);
  CHECK(run({"verify", "--suite", "frames", "--function", "lse_toric(a=[1,2],beta=2)", "--dim", "1", "--points",
             "5"})
            .code == cli::kExitPass);

  Result neg = run({"verify", "--suite", "positivity", "--function",
                    "smooth_poly(terms=[(-1,[1,0],[1,0]),(-1,[0,1],[0,1])])", "--dim", "1", "--positivity-samples",
                    "200"});
  CHECK(neg.code == cli::kExitCheckFailed);
  json nd = json::parse(neg.out);
  CHECK(nd["pass"] == false);
  CHECK(nd["checks"][0]["witness"].get<std::string>().find("eig=") != std::string::npos);
}
