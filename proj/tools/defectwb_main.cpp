// defectwb: command-line front end over the shared C API.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "defectwb.h"
#include "json.hpp"

using json = nlohmann::ordered_json;

namespace {

int run_eval(const std::string& op, const json& params, bool csv) {
  dwb_result* res = nullptr;
  int rc = dwb_eval(op.c_str(), params.dump().c_str(), &res);
  if (rc == 2) {
    std::cerr << "error: " << dwb_last_error() << "\n";
    return 2;
  }
  json rep = json::parse(dwb_result_json(res));
  dwb_result_free(res);
  if (csv) {
    // flatten the payload into path,value rows
    std::function<void(const json&, const std::string&)> walk =
        [&](const json& node, const std::string& path) {
          if (node.is_object()) {
            for (auto& [k, v] : node.items()) walk(v, path.empty() ? k : path + "." + k);
          } else if (node.is_array()) {
            for (size_t i = 0; i < node.size(); ++i)
              walk(node[i], path + "." + std::to_string(i));
          } else {
            std::cout << path << "," << node.dump() << "\n";
          }
        };
    std::cout << "field,value\n";
    walk(rep["payload"], "");
    std::cout << "pass," << (rep["pass"].get<bool>() ? "true" : "false") << "\n";
  } else {
    std::cout << rep.dump(2) << "\n";
  }
  return rc;
}

// "-2..2:1/2" or plain comma lists; values as integers or decimal/rational
// strings, converted to exact rational strings.
std::pair<long long, long long> parse_rat(const std::string& s) {
  auto reduce = [](long long n, long long d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    return std::make_pair(n, d);
  };
  auto slash = s.find('/');
  if (slash != std::string::npos)
    return reduce(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  auto dot = s.find('.');
  if (dot == std::string::npos) return {std::stoll(s), 1};
  std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
  bool neg = !ip.empty() && ip[0] == '-';
  long long den = 1;
  for (size_t i = 0; i < fp.size(); ++i) den *= 10;
  long long num = std::stoll(ip.empty() || ip == "-" ? "0" : ip);
  long long frac = fp.empty() ? 0 : std::stoll(fp);
  num = num * den + (neg ? -frac : frac);
  return reduce(num, den);
}

json parse_sweep(const std::string& spec) {
  json out = json::array();
  auto emit = [&](long long n, long long d) {
    out.push_back(d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d));
  };
  auto range = spec.find("..");
  if (range == std::string::npos) {
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      auto [n, d] = parse_rat(tok);
      emit(n, d);
    }
    return out;
  }
  auto colon = spec.find(':', range);
  std::string lo = spec.substr(0, range);
  std::string hi = colon == std::string::npos ? spec.substr(range + 2)
                                              : spec.substr(range + 2, colon - range - 2);
  std::string step = colon == std::string::npos ? "1" : spec.substr(colon + 1);
  auto [an, ad] = parse_rat(lo);
  auto [bn, bd] = parse_rat(hi);
  auto [sn, sd] = parse_rat(step);
  if (sn <= 0) throw CLI::ValidationError("--sweep-s", "step must be positive");
  // iterate a + k s while <= b, exactly
  for (long long k = 0;; ++k) {
    long long num = an * sd + k * sn * ad;  // over denominator ad * sd
    long long den = ad * sd;
    if (static_cast<long double>(num) * bd > static_cast<long double>(bn) * den) break;
    long long g = std::gcd(num < 0 ? -num : num, den);
    emit(g ? num / g : num, g ? den / g : den);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* eps = std::getenv("DEFECTWB_EPS")) {
    char* end = nullptr;
    double v = std::strtod(eps, &end);
    if (!end || *end != '\0' || dwb_set_tolerance(v) != 0) {
      std::cerr << "error: invalid DEFECTWB_EPS '" << eps << "'\n";
      return 2;
    }
  }

  CLI::App app{"defectwb: computational workbench for defects of classical BV theories"};
  app.set_version_flag("--version", std::string("defectwb ") + dwb_version() + " (schema " +
                                        std::to_string(dwb_schema_version()) + ")");
  app.require_subcommand(1);

  int exit_code = 0;
  auto add_run = [&](CLI::App* sub, std::function<json()> make_params, bool* csv_flag) {
    sub->callback([&, sub, make_params, csv_flag]() {
      try {
        exit_code = run_eval(sub->get_name(), make_params(), csv_flag && *csv_flag);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        exit_code = 2;
      }
    });
  };

  // collapse
  auto* collapse = app.add_subcommand("collapse", "Collapse profile and locality checks");
  static double c_t = 0.25, c_family = 0.0;
  static bool c_loc = false;
  collapse->add_option("--t", c_t, "collapse scale t");
  collapse->add_option("--family", c_family, "profile family parameter in [0,1]");
  collapse->add_flag("--check-locality", c_loc, "verify pushforward locality on sampled opens");
  add_run(collapse, [] {
    return json{{"t", c_t}, {"family", c_family}, {"check_locality", c_loc}};
  }, nullptr);

  // fact-line
  auto* fact = app.add_subcommand("fact-line", "Weyl/Fock defect on the line");
  static int f_vdim = 2, f_depth = 3;
  static std::string f_lm = "q", f_lp = "q";
  static bool f_tables = false;
  fact->add_option("--v-dim", f_vdim, "symplectic dimension (even)")->check(CLI::Range(2, 8));
  fact->add_option("--lminus", f_lm, "left Lagrangian: q, p, or mixed");
  fact->add_option("--lplus", f_lp, "right Lagrangian: q, p, or mixed");
  fact->add_option("--depth", f_depth, "axiom nesting depth");
  fact->add_flag("--emit-tables", f_tables, "emit flattened CSV tables");
  add_run(fact, [] {
    if (f_vdim % 2 != 0) throw CLI::ValidationError("--v-dim", "must be even");
    return json{{"v_pairs", f_vdim / 2}, {"lminus", f_lm}, {"lplus", f_lp},
                {"depth", f_depth}};
  }, &f_tables);

  // scalar-defect
  auto* scalar = app.add_subcommand("scalar-defect", "Free scalar point defect jets");
  static std::string s_radius = "1";
  static int s_modes = 5, s_order = 8;
  static bool s_csv = false;
  scalar->add_option("--radius", s_radius, "disk radius (rational)");
  scalar->add_option("--modes", s_modes, "Fourier truncation K");
  scalar->add_option("--order", s_order, "jet order M");
  scalar->add_flag("--csv", s_csv, "emit flattened CSV");
  add_run(scalar, [] {
    return json{{"radius", s_radius}, {"modes", s_modes}, {"order", s_order}};
  }, &s_csv);

  // monodromy
  auto* mono = app.add_subcommand("monodromy", "Monodromy of a piecewise-constant loop");
  static std::string m_algebra = "sl2", m_segments;
  mono->add_option("--algebra", m_algebra, "u1, abelianN, sl2, heisenberg");
  mono->add_option("--segments", m_segments, "JSON file of {coeffs, length} segments")
      ->check(CLI::ExistingFile);
  add_run(mono, [] {
    json p{{"algebra", m_algebra}};
    if (!m_segments.empty()) {
      std::ifstream in(m_segments);
      p["segments"] = json::parse(in);
    }
    return p;
  }, nullptr);

  // bf-lagrangians
  auto* bf = app.add_subcommand("bf-lagrangians", "BF Lagrangian families L_s and L_l");
  static std::string b_algebra = "sl2", b_sweep;
  bf->add_option("--algebra", b_algebra, "Lie algebra name");
  bf->add_option("--sweep-s", b_sweep, "s values: list 'a,b,c' or range 'a..b:step'");
  add_run(bf, [] {
    json p{{"algebra", b_algebra}};
    if (!b_sweep.empty()) p["sweep_s"] = parse_sweep(b_sweep);
    return p;
  }, nullptr);

  // wilson
  auto* wil = app.add_subcommand("wilson", "Wilson loop and charged coupling");
  static int w_weight = 3;
  static double w_flux = 0.7;
  wil->add_option("--weight", w_weight, "u(1) character weight n");
  wil->add_option("--flux", w_flux, "loop flux (integral of A)");
  add_run(wil, [] { return json{{"weight", w_weight}, {"flux", w_flux}}; }, nullptr);

  // ym
  auto* ym = app.add_subcommand("ym", "First-order Yang-Mills complex checks");
  static int y_cutoff = 1;
  static std::string y_coupling = "1";
  static bool y_check = false;
  ym->add_option("--cutoff", y_cutoff, "Fourier mode cutoff");
  ym->add_option("--coupling", y_coupling, "coupling constant c (rational)");
  ym->add_flag("--check", y_check, "run the full check suite (always on)");
  add_run(ym, [] { return json{{"cutoff", y_cutoff}, {"coupling", y_coupling}}; }, nullptr);

  // monopole
  auto* mp = app.add_subcommand("monopole", "Dirac monopole charge quadrature");
  static int p_charge = 1, p_grid = 64;
  mp->add_option("--charge", p_charge, "magnetic charge m");
  mp->add_option("--grid", p_grid, "quadrature grid n");
  add_run(mp, [] { return json{{"charge", p_charge}, {"grid", p_grid}}; }, nullptr);

  // dyonic
  auto* dy = app.add_subcommand("dyonic", "Dyonic defect descriptor");
  static int d_m = 1, d_n = 2;
  dy->add_option("--m", d_m, "magnetic charge");
  dy->add_option("--n", d_n, "electric weight");
  add_run(dy, [] { return json{{"m", d_m}, {"n", d_n}}; }, nullptr);

  // suite
  auto* suite = app.add_subcommand("suite", "Run a directory of scenarios");
  static std::string su_dir, su_json;
  static int su_jobs = 1;
  suite->add_option("dir", su_dir, "scenario directory")->required();
  suite->add_option("--jobs", su_jobs, "worker threads");
  suite->add_option("--json", su_json, "write the canonical aggregate report here");
  suite->callback([&]() {
    dwb_result* res = nullptr;
    int rc = dwb_run_suite(su_dir.c_str(), su_jobs, &res);
    if (rc == 2) {
      std::cerr << "error: " << dwb_last_error() << "\n";
      exit_code = 2;
      return;
    }
    std::string payload = dwb_result_json(res);
    dwb_result_free(res);
    if (!su_json.empty()) {
      std::ofstream out(su_json);
      out << payload;
    } else {
      std::cout << payload;
    }
    json rep = json::parse(payload);
    int passed = 0, total = 0;
    for (auto& r : rep["results"]) {
      ++total;
      if (r["pass"].get<bool>()) ++passed;
      else std::cerr << "FAIL " << r["name"].get<std::string>() << "\n";
    }
    std::cerr << passed << "/" << total << " scenarios passed\n";
    exit_code = rc;
  });

  CLI11_PARSE(app, argc, argv);
  return exit_code;
}
