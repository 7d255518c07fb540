// Exercises the shared library strictly through the public C header.
#include "doctest.h"

#include <unistd.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "defectwb.h"
#include "json.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

TEST_CASE("version and schema accessors") {
  CHECK(std::strcmp(dwb_version(), "1.0.0") == 0);
  CHECK(dwb_schema_version() == 1);
}

TEST_CASE("evaluating an operation end to end") {
  dwb_result* res = nullptr;
  int rc = dwb_eval("monopole", R"({"charge":2,"grid":16,"convergence":false})", &res);
  REQUIRE(rc == 0);
  REQUIRE(res != nullptr);
  CHECK(dwb_result_passed(res) == 1);
  json rep = json::parse(dwb_result_json(res));
  CHECK(rep["op"] == "monopole");
  CHECK(rep["pass"] == true);
  CHECK(rep["payload"]["charge"] == 2);
  dwb_result_free(res);
}

TEST_CASE("a named evaluation keeps its label") {
  dwb_result* res = nullptr;
  REQUIRE(dwb_eval("dyonic", R"({"name":"my-dyon","m":1,"n":2})", &res) == 0);
  json rep = json::parse(dwb_result_json(res));
  CHECK(rep["name"] == "my-dyon");
  dwb_result_free(res);
}

TEST_CASE("failed checks return status one with a report") {
  dwb_result* res = nullptr;
  int rc = dwb_eval("bf-lagrangians", R"({"algebra":"heisenberg","subalgebras":false})", &res);
  CHECK(rc == 1);
  REQUIRE(res != nullptr);
  CHECK(dwb_result_passed(res) == 0);
  json rep = json::parse(dwb_result_json(res));
  CHECK(rep["pass"] == false);
  dwb_result_free(res);
}

TEST_CASE("usage errors return status two and set the error string") {
  dwb_result* res = nullptr;
  CHECK(dwb_eval("nosuch-op", "{}", &res) == 2);
  CHECK(res == nullptr);
  CHECK(std::strlen(dwb_last_error()) > 0);
  CHECK(dwb_eval("monopole", "{not json", &res) == 2);
  CHECK(dwb_eval("monopole", R"({"bogus":1})", &res) == 2);
  CHECK(dwb_eval(nullptr, "{}", &res) == 2);
  CHECK(dwb_eval("monopole", "{}", nullptr) == 2);
}

TEST_CASE("tolerance knob") {
  double old = dwb_get_tolerance();
  CHECK(dwb_set_tolerance(1e-7) == 0);
  CHECK(dwb_get_tolerance() == doctest::Approx(1e-7));
  CHECK(dwb_set_tolerance(0.0) == 2);
  CHECK(dwb_set_tolerance(-1.0) == 2);
  CHECK(dwb_get_tolerance() == doctest::Approx(1e-7));
  dwb_set_tolerance(old);
}

TEST_CASE("running a suite directory") {
  fs::path dir = fs::temp_directory_path() / ("dwb-capi-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::ofstream(dir / "s.ini") << "[quick-mono]\nop = monopole\ncharge = 1\ngrid = 16\n"
                                  "convergence = false\n";
  dwb_result* res = nullptr;
  int rc = dwb_run_suite(dir.string().c_str(), 2, &res);
  CHECK(rc == 0);
  REQUIRE(res != nullptr);
  json rep = json::parse(dwb_result_json(res));
  CHECK(rep["all_pass"] == true);
  CHECK(rep["results"].size() == 1);
  CHECK(rep["results"][0]["name"] == "quick-mono");
  dwb_result_free(res);

  CHECK(dwb_run_suite((dir / "nosuch").string().c_str(), 1, &res) == 2);
  CHECK(std::strlen(dwb_last_error()) > 0);
  fs::remove_all(dir);
}

TEST_CASE("freeing a null result is harmless") {
  dwb_result_free(nullptr);
  CHECK(std::strcmp(dwb_result_json(nullptr), "") == 0);
  CHECK(dwb_result_passed(nullptr) == 0);
}
