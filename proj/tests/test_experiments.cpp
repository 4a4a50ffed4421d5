#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "qssa/csv.hpp"
#include "qssa/errors.hpp"
#include "qssa/experiments.hpp"
#include "qssa/report.hpp"

using namespace qssa;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qssa_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.123456789, -2.5}) {
    CHECK(std::stod(format_number(x)) == x);
  }
  CHECK(format_number(NAN) == "nan");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(hex64(fnv1a64("a")) == "af63dc4c8601ec8c");
}

TEST_CASE("run configuration parsing") {
  const Json j = Json::parse(R"({"k1": 2, "k_m1": 100, "k2": 100, "s0": 10, "e0": 1, "q": 0.9,
                                 "integration": {"rel_tol": 1e-9, "abs_tol": 1e-11, "t_end": 5}})");
  const auto rc = parse_run_config(j);
  CHECK(rc.reaction.rates.k1 == 2);
  CHECK(rc.reaction.s0 == 10);
  CHECK(rc.q == 0.9);
  CHECK(rc.integration.rel_tol == 1e-9);
  CHECK(*rc.integration.abs_tol == 1e-11);
  CHECK(*rc.integration.t_end == 5);
  CHECK(parse_run_config(to_json(rc)).integration.t_end == rc.integration.t_end);
  CHECK_FALSE(parse_run_config(Json::parse(R"({"integration": {"t_end": "auto"}})")).integration.t_end);
  CHECK_THROWS_AS(parse_run_config(Json::parse(R"({"kcat": 1})")), UsageError);
  CHECK_THROWS_AS(parse_run_config(Json::parse(R"({"k1": "fast"})")), UsageError);
  CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), UsageError);
}

TEST_CASE("time compression") {
  CHECK(t_infinity(0.0) == Approx(0.0).scale(1));
  CHECK(t_infinity(1e6) < 1.0);
  CHECK(t_infinity(1.0) < t_infinity(2.0));
}

TEST_CASE("quick reference report") {
  const Json r = quick_reference(fixtures::fig1);
  CHECK(r["table1"]["k_m"].get<double>() == 20.0);
  CHECK(r["table2"]["eps_ssl"].get<double>() == Approx(0.041667).epsilon(1e-5));
  bool found = false;
  for (const auto& row : r["table3"]) {
    if (row["symbol"] == "big_delta_dstar") {
      CHECK(row["reliability"] == "++");
      found = true;
    }
    if (row["symbol"] == "eps_opt") CHECK(row["reliability"] == "+");
  }
  CHECK(found);
  auto no_enzyme = fixtures::fig1;
  no_enzyme.e0 = 0;
  CHECK_THROWS_AS(quick_reference(no_enzyme), UsageError);
}

TEST_CASE("bound report hypothesis flags") {
  const Json ok = bound_report(fixtures::fig2_bottom_left, 0.97);
  CHECK(ok["hypotheses"]["all_hold"].is_boolean());
  const Json outside = bound_report(fixtures::fig2_bottom_left, 0.3);
  CHECK(outside["hypotheses"].is_null());
}

TEST_CASE("sweep along e0") {
  SweepSpec spec;
  spec.base = fixtures::make(1, 100, 100, 200, 1);
  spec.axis = "e0";
  spec.values = figure_e0_grid();
  spec.outputs = {"eps_ssl", "t_cross", "t_u_dagger_1"};
  const auto t = run_sweep(spec);
  CHECK(t.rows.size() == 12);
  CHECK(t.columns == std::vector<std::string>{"e0", "eps_ssl", "t_cross", "t_u_dagger_1"});
  for (std::size_t i = 0; i < t.rows.size(); ++i) CHECK(t.rows[i][0] == spec.values[i]);
  CHECK(t.rows[7][2] == Approx(0.0201877343).epsilon(2e-8));
}

TEST_CASE("single-value sweep equals a direct computation") {
  SweepSpec spec;
  spec.base = fixtures::ww_bottom;
  spec.axis = "s0";
  spec.values = {10};
  spec.outputs = {"eps_l", "eps_w", "delta_star", "max_err_slow"};
  const auto t = run_sweep(spec);
  REQUIRE(t.rows.size() == 1);
  const RunConfig rc{fixtures::ww_bottom, kDefaultQ, {}};
  CHECK(t.rows[0][1] == slow_error_params(fixtures::ww_bottom).eps_L);
  CHECK(t.rows[0][2] == slow_error_params(fixtures::ww_bottom).eps_W);
  CHECK(t.rows[0][3] == delta_star(fixtures::ww_bottom).value);
  CHECK(t.rows[0][4] == evaluate_quantity("max_err_slow", rc));
  CHECK(t.rows[0][4] <= t.rows[0][1]);
}

TEST_CASE("sweep over k1 approaches the small-k1 forms") {
  SweepSpec spec;
  spec.base = fixtures::make(1, 100, 100, 200, 1);
  spec.axis = "k1";
  spec.values = {1e-1, 1e-2, 1e-3, 1e-4};
  spec.outputs = {"c_star", "asym_c_star", "eps_ssl", "asym_eps_ssl"};
  const auto t = run_sweep(spec);
  double prev_c = 1e9, prev_e = 1e9;
  for (const auto& row : t.rows) {
    const double gc = std::abs(row[1] - row[2]) / row[1];
    const double ge = std::abs(row[3] - row[4]) / row[3];
    CHECK(gc < prev_c);
    CHECK(ge < prev_e);
    prev_c = gc;
    prev_e = ge;
  }
  CHECK(prev_c < 1e-3);
}

TEST_CASE("sweep errors") {
  SweepSpec spec;
  spec.base = fixtures::fig1;
  spec.axis = "e0";
  spec.values = {1};
  spec.outputs = {"not_a_quantity"};
  try {
    run_sweep(spec);
    FAIL("expected a usage error");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("eps_ssl") != std::string::npos);
  }
  spec.outputs = {"eps_ssl"};
  spec.axis = "kcat";
  CHECK_THROWS_AS(run_sweep(spec), UsageError);
  spec.axis = "e0";
  spec.values = {};
  CHECK_THROWS_AS(run_sweep(spec), UsageError);
  spec.values = {-1};
  CHECK_THROWS_AS(run_sweep(spec), UsageError);
}

TEST_CASE("undefined quantities are NaN") {
  // exact_b is undefined where the upper-time hypotheses fail.
  const RunConfig rc{fixtures::ww_bottom, 0.97, {}};
  CHECK(std::isnan(evaluate_quantity("t0_bound_b", rc)));
}

TEST_CASE("figure manifests record the panel configurations") {
  const auto dir = scratch("panels");
  const auto f1 = run_figure("fig1", dir.string());
  const auto& p = f1.manifest["panels"][0]["config"];
  CHECK(p["s0"] == 100.0);
  CHECK(p["e0"] == 5.0);
  CHECK(p["k1"] == 1.0);
  CHECK(p["k2"] == 10.0);
  CHECK(p["k_m1"] == 10.0);

  const auto f2 = run_figure("fig2", dir.string());
  CHECK(f2.manifest["panels"].size() == 4);
  CHECK(f2.manifest["e0_grid"].size() == 12);
  CHECK(f2.files.size() == 5);

  CHECK_THROWS_AS(run_figure("fig9", dir.string()), UsageError);
  fs::remove_all(dir);
}

TEST_CASE("figure datasets are reproducible byte for byte") {
  const auto a = scratch("repro_a");
  const auto b = scratch("repro_b");
  for (const auto& id : {"fig1", "figww", "figzz"}) {
    const auto da = run_figure(id, a.string());
    // Re-run from the options recorded in the manifest.
    const auto db = run_figure(id, b.string(), parse_integration_options(da.manifest["integration"]));
    CHECK(da.manifest_hash == db.manifest_hash);
    REQUIRE(da.files.size() == db.files.size());
    for (std::size_t i = 0; i < da.files.size(); ++i) {
      CHECK(slurp(da.files[i]) == slurp(db.files[i]));
    }
    // Every CSV leads with the manifest hash.
    for (const auto& f : da.files) {
      if (fs::path(f).extension() == ".csv") {
        CHECK(slurp(f).rfind("# manifest_hash=" + da.manifest_hash, 0) == 0);
      }
    }
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("figure CSV columns use the report vocabulary") {
  const auto dir = scratch("vocab");
  std::vector<std::string> known = quantity_names();
  for (const char* extra : {"t", "s", "c", "g_s", "L", "g1_s", "g_delta_star_s", "t_rel", "t_inf", "xi",
                            "z", "err", "tau", "bound_running", "bound_exact_a"}) {
    known.emplace_back(extra);
  }
  for (const auto& id : figure_ids()) {
    for (const auto& f : run_figure(id, dir.string()).files) {
      if (fs::path(f).extension() != ".csv") continue;
      std::ifstream in(f);
      std::string line;
      while (std::getline(in, line) && line.rfind('#', 0) == 0) {
      }
      std::stringstream ss(line);
      std::string col;
      while (std::getline(ss, col, ',')) {
        CAPTURE(f);
        CAPTURE(col);
        CHECK(std::find(known.begin(), known.end(), col) != known.end());
      }
    }
  }
  fs::remove_all(dir);
}

TEST_CASE("default output directory") {
  setenv("QSSA_OUT_DIR", "/tmp/qssa_env_out", 1);
  CHECK(default_out_dir() == "/tmp/qssa_env_out");
  unsetenv("QSSA_OUT_DIR");
  CHECK(default_out_dir() == ".");
}
