#include "doctest.h"

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "core/scenario.hpp"

using namespace dwb;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("dwb-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(reinterpret_cast<uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  void put(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
  }
};

}  // namespace

TEST_CASE("INI parsing: sections, comments, typing") {
  auto ss = parse_scenarios(
      "# header comment\n"
      "[mono-a]\n"
      "op = monopole\n"
      "charge = 2\n"
      "grid = 16\n"
      "convergence = false\n"
      "; another comment\n"
      "[mono-b]\n"
      "op = monopole\n"
      "charge = -1\n",
      "t.ini");
  REQUIRE(ss.size() == 2);
  CHECK(ss[0].name == "mono-a");
  CHECK(ss[0].op == "monopole");
  CHECK(ss[0].params.at("charge").get<int>() == 2);
  CHECK(ss[0].params.at("convergence").get<bool>() == false);
  CHECK(ss[1].params.at("charge").get<int>() == -1);
}

TEST_CASE("INI parsing errors carry line numbers and context") {
  CHECK_THROWS_AS(parse_scenarios("[a]\nop = monopole\ncharge\n", "t.ini"), ConfigError);
  CHECK_THROWS_AS(parse_scenarios("key = 1\n", "t.ini"), ConfigError);          // no section
  CHECK_THROWS_AS(parse_scenarios("[a]\nop = monopole\ncharge = 1\ncharge = 2\n", "t.ini"),
                  ConfigError);  // duplicate key
  CHECK_THROWS_AS(parse_scenarios("[a]\ncharge = 1\n", "t.ini"), ConfigError);  // missing op
  CHECK_THROWS_AS(parse_scenarios("[a]\nop = nosuch\n", "t.ini"), ConfigError);
  CHECK_THROWS_AS(parse_scenarios("[a]\nop = monopole\nbogus = 1\n", "t.ini"), ConfigError);
  CHECK_THROWS_AS(parse_scenarios("[a]\nop = monopole\ncharge = abc\n", "t.ini"), ConfigError);
  CHECK_THROWS_AS(parse_scenarios("[unterminated\n", "t.ini"), ConfigError);
}

TEST_CASE("JSON scenario form") {
  auto ss = parse_scenarios(
      R"([{"name":"d1","op":"dyonic","params":{"m":1,"n":2}},
          {"name":"d2","op":"dyonic"}])",
      "t.json");
  REQUIRE(ss.size() == 2);
  CHECK(ss[0].params.at("m").get<int>() == 1);
  CHECK_THROWS_AS(parse_scenarios(R"({"op":"dyonic"})", "t.json"), ConfigError);
  CHECK_THROWS_AS(parse_scenarios("{not json", "t.json"), ConfigError);
}

TEST_CASE("validation rejects unknown fields and operations") {
  Scenario s;
  s.name = "x";
  s.op = "monopole";
  s.params["charge"] = 1;
  validate_scenario(s);
  s.params["mystery"] = 1;
  CHECK_THROWS_AS(validate_scenario(s), ConfigError);
  s.params.erase("mystery");
  s.op = "nosuch";
  CHECK_THROWS_AS(validate_scenario(s), ConfigError);
  s.op = "monopole";
  s.name = "";
  CHECK_THROWS_AS(validate_scenario(s), ConfigError);
}

TEST_CASE("running a quick scenario") {
  Scenario s;
  s.name = "mono";
  s.op = "monopole";
  s.params = json{{"charge", 2}, {"grid", 16}, {"convergence", false}};
  Report r = run_scenario(s);
  CHECK(r.pass);
  CHECK(r.payload.at("charge").get<int>() == 2);
  CHECK(r.op == "monopole");
}

TEST_CASE("golden expectations compare against the payload") {
  Scenario s;
  s.name = "mono";
  s.op = "monopole";
  s.params = json{{"charge", 2}, {"grid", 16}, {"convergence", false},
                  {"expect.charge", 2}, {"expect.estimate", 2.0}, {"expect_tol", 1e-5}};
  CHECK(run_scenario(s).pass);

  s.params["expect.charge"] = 3;
  Report bad = run_scenario(s);
  CHECK_FALSE(bad.pass);
  CHECK(bad.payload.contains("expect_failures"));

  // a missing path is a failure, not a crash
  s.params.erase("expect.charge");
  s.params["expect.not.there"] = 1;
  CHECK_FALSE(run_scenario(s).pass);
}

TEST_CASE("expected failures invert the pass flag") {
  Scenario s;
  s.name = "bf-heis";
  s.op = "bf-lagrangians";
  s.params = json{{"algebra", "heisenberg"}, {"subalgebras", false}};
  CHECK_FALSE(run_scenario(s).pass);  // no invariant form: the graph family errors
  s.params["expect_pass"] = false;
  CHECK(run_scenario(s).pass);
  s.params["expect_pass"] = true;
  CHECK_FALSE(run_scenario(s).pass);
}

TEST_CASE("runtime faults become failed reports, not exceptions") {
  Scenario s;
  s.name = "bad-segments";
  s.op = "monodromy";
  s.params = json{{"algebra", "sl2"},
                  {"segments", json::array({json{{"coeffs", json::array({1.0, 0.0, 0.0})},
                                                 {"length", -1.0}}})}};
  Report r = run_scenario(s);  // negative length fails validate() inside
  CHECK_FALSE(r.pass);
  CHECK(r.payload.contains("error"));
}

TEST_CASE("suite runs are deterministic and ordered by name") {
  TempDir dir;
  dir.put("b.ini",
          "[z-mono]\nop = monopole\ncharge = 1\ngrid = 16\nconvergence = false\n");
  dir.put("a.ini",
          "[a-dyon]\nop = dyonic\nm = 1\nn = 2\n[m-mono]\nop = monopole\ncharge = 0\n");
  dir.put("notes.txt", "ignored");
  SuiteResult r1 = run_suite(dir.path.string(), 1);
  SuiteResult r2 = run_suite(dir.path.string(), 4);
  REQUIRE(r1.reports.size() == 3);
  CHECK(r1.reports[0].name == "a-dyon");
  CHECK(r1.reports[1].name == "m-mono");
  CHECK(r1.reports[2].name == "z-mono");
  CHECK(r1.all_pass);
  CHECK(r1.canonical().dump() == r2.canonical().dump());
  CHECK(r1.canonical()["artifact_version"] == kVersion);
  CHECK(r1.canonical()["schema_version"] == kSchemaVersion);
  // durations never enter the canonical payload
  CHECK(r1.canonical().dump().find("duration") == std::string::npos);
}

TEST_CASE("suite configuration errors") {
  TempDir empty;
  CHECK_THROWS_AS(run_suite(empty.path.string(), 1), ConfigError);
  CHECK_THROWS_AS(run_suite((empty.path / "nosuch").string(), 1), ConfigError);
  TempDir dup;
  dup.put("a.ini", "[same]\nop = dyonic\n");
  dup.put("b.ini", "[same]\nop = dyonic\n");
  CHECK_THROWS_AS(run_suite(dup.path.string(), 1), ConfigError);
}
