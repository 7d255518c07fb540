#include "defectwb.h"

#include <string>

#include "core/scenario.hpp"

struct dwb_result {
  std::string payload;
  bool pass = false;
};

namespace {

thread_local std::string g_last_error;

int fail_usage(const std::string& msg) {
  g_last_error = msg;
  return 2;
}

}  // namespace

extern "C" {

const char* dwb_version(void) { return dwb::kVersion; }

int dwb_schema_version(void) { return dwb::kSchemaVersion; }

int dwb_eval(const char* op, const char* params_json, dwb_result** out) {
  if (out) *out = nullptr;
  if (!op || !out) return fail_usage("dwb_eval: op and out must be non-null");
  try {
    dwb::Scenario s;
    s.op = op;
    s.name = op;
    if (params_json && params_json[0] != '\0') {
      dwb::json params = dwb::json::parse(params_json);
      if (!params.is_object()) return fail_usage("dwb_eval: params must be a JSON object");
      if (params.contains("name")) {
        s.name = params.at("name").get<std::string>();
        params.erase("name");
      }
      s.params = std::move(params);
    }
    dwb::Report rep = dwb::run_scenario(s);
    auto* r = new dwb_result{dwb::to_json(rep).dump(), rep.pass};
    *out = r;
    return rep.pass ? 0 : 1;
  } catch (const dwb::ConfigError& e) {
    return fail_usage(e.what());
  } catch (const std::exception& e) {
    return fail_usage(std::string("dwb_eval: ") + e.what());
  }
}

int dwb_run_suite(const char* dir, int jobs, dwb_result** out) {
  if (out) *out = nullptr;
  if (!dir || !out) return fail_usage("dwb_run_suite: dir and out must be non-null");
  try {
    dwb::SuiteResult suite = dwb::run_suite(dir, jobs < 1 ? 1 : jobs);
    auto* r = new dwb_result{suite.canonical().dump(2) + "\n", suite.all_pass};
    *out = r;
    return suite.all_pass ? 0 : 1;
  } catch (const dwb::ConfigError& e) {
    return fail_usage(e.what());
  } catch (const std::exception& e) {
    return fail_usage(std::string("dwb_run_suite: ") + e.what());
  }
}

const char* dwb_result_json(const dwb_result* r) { return r ? r->payload.c_str() : ""; }

int dwb_result_passed(const dwb_result* r) { return r && r->pass ? 1 : 0; }

void dwb_result_free(dwb_result* r) { delete r; }

int dwb_set_tolerance(double eps) {
  try {
    dwb::Tolerance::set(eps);
    return 0;
  } catch (const std::exception& e) {
    return fail_usage(e.what());
  }
}

double dwb_get_tolerance(void) { return dwb::Tolerance::get(); }

const char* dwb_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
