#include "qssa/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <utility>

#include "qssa/bounds.hpp"
#include "qssa/csv.hpp"
#include "qssa/errors.hpp"
#include "qssa/lambert_w.hpp"
#include "qssa/mass_action.hpp"
#include "qssa/validation.hpp"

namespace fs = std::filesystem;

namespace qssa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kE = 2.718281828459045235;

double get_number(const Json& j, const char* key) {
  if (!j.is_number()) throw UsageError(std::string("config key '") + key + "' must be a number");
  return j.get<double>();
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration files.

IntegrationOptions parse_integration_options(const Json& j, const IntegrationOptions& defaults) {
  if (!j.is_object()) throw UsageError("'integration' must be an object");
  IntegrationOptions o = defaults;
  for (const auto& [key, value] : j.items()) {
    const bool is_auto = value.is_string() && value.get<std::string>() == "auto";
    if (key == "rel_tol") {
      o.rel_tol = get_number(value, "rel_tol");
    } else if (key == "abs_tol") {
      o.abs_tol = is_auto || value.is_null() ? std::nullopt
                                             : std::optional<double>(get_number(value, "abs_tol"));
    } else if (key == "t_end") {
      o.t_end = is_auto || value.is_null() ? std::nullopt
                                           : std::optional<double>(get_number(value, "t_end"));
    } else if (key == "event_tol") {
      o.event_tol = is_auto || value.is_null()
                        ? std::nullopt
                        : std::optional<double>(get_number(value, "event_tol"));
    } else if (key == "max_steps") {
      const double n = get_number(value, "max_steps");
      if (!(n >= 1.0)) throw UsageError("max_steps must be positive");
      o.max_steps = static_cast<std::size_t>(n);
    } else {
      throw UsageError("unknown integration key '" + key + "'");
    }
  }
  return o;
}

RunConfig parse_run_config(const Json& j, const RunConfig& defaults) {
  if (!j.is_object()) throw UsageError("configuration must be a JSON object");
  RunConfig rc = defaults;
  for (const auto& [key, value] : j.items()) {
    if (key == "k1") {
      rc.reaction.rates.k1 = get_number(value, "k1");
    } else if (key == "k_m1") {
      rc.reaction.rates.k_m1 = get_number(value, "k_m1");
    } else if (key == "k2") {
      rc.reaction.rates.k2 = get_number(value, "k2");
    } else if (key == "s0") {
      rc.reaction.s0 = get_number(value, "s0");
    } else if (key == "e0") {
      rc.reaction.e0 = get_number(value, "e0");
    } else if (key == "q") {
      rc.q = get_number(value, "q");
    } else if (key == "integration") {
      rc.integration = parse_integration_options(value, rc.integration);
    } else {
      throw UsageError("unknown configuration key '" + key + "'");
    }
  }
  return rc;
}

RunConfig load_run_config(const std::string& path, const RunConfig& defaults) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read configuration file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("malformed JSON in " + path + ": " + e.what());
  }
  return parse_run_config(j, defaults);
}

Json to_json(const RunConfig& rc) {
  Json j = to_json(rc.reaction);
  j["q"] = rc.q;
  j["integration"] = to_json(rc.integration);
  return j;
}

std::string default_out_dir() {
  const char* env = std::getenv("QSSA_OUT_DIR");
  return env && *env ? std::string(env) : std::string(".");
}

double t_infinity(double t) { return 1.0 - 1.0 / std::log(t + kE); }

const std::vector<double>& figure_e0_grid() {
  static const std::vector<double> grid{0.025, 0.05, 0.075, 0.1, 0.25, 0.5,
                                        0.75,  1.0,  2.5,   5.0, 7.5,  10.0};
  return grid;
}

// ---------------------------------------------------------------------------
// Quantity registry.

namespace {

class Evaluator {
 public:
  explicit Evaluator(RunConfig rc) : rc_(std::move(rc)) {}

  const ReactionConfig& cfg() const { return rc_.reaction; }
  double q() const { return rc_.q; }

  const VerificationContext& ctx() {
    if (!ctx_) ctx_ = prepare_verification(rc_.reaction, rc_.integration);
    if (!ctx_->crossing) throw DomainError("no crossing without dynamics");
    return *ctx_;
  }
  const CrossingRecord& crossing() { return *ctx().crossing; }

  // Max of |reference - s|/s0 over samples, reference being the reduced
  // solution from (t_start, s_start); only samples in [from, to] count.
  double max_error(double t_start, double s_start, double from, double to) {
    const auto& c = ctx();
    double worst = 0.0;
    c.trajectory.for_each_sample(kSamplesPerStep, [&](double t, const Vec<2>& y) {
      if (t < from || t > to) return;
      const double ref = schnell_mendoza(s_start, t_start, t, cfg(), 0.0).s_lower;
      worst = std::max(worst, std::abs(ref - y[0]) / cfg().s0);
    });
    return worst;
  }

 private:
  RunConfig rc_;
  std::optional<VerificationContext> ctx_;
};

using QuantityFn = std::function<double(Evaluator&)>;

const std::vector<std::pair<std::string, QuantityFn>>& registry() {
  static const std::vector<std::pair<std::string, QuantityFn>> reg = [] {
    std::vector<std::pair<std::string, QuantityFn>> r;
    auto add = [&r](std::string name, QuantityFn fn) { r.emplace_back(std::move(name), std::move(fn)); };
    auto flag = [](bool b) { return b ? 1.0 : 0.0; };

    add("k1", [](Evaluator& e) { return e.cfg().rates.k1; });
    add("k_m1", [](Evaluator& e) { return e.cfg().rates.k_m1; });
    add("k2", [](Evaluator& e) { return e.cfg().rates.k2; });
    add("s0", [](Evaluator& e) { return e.cfg().s0; });
    add("e0", [](Evaluator& e) { return e.cfg().e0; });
    add("q", [](Evaluator& e) { return e.q(); });

    add("k_m", [](Evaluator& e) { return derive_constants(e.cfg()).K_M; });
    add("k_s", [](Evaluator& e) { return derive_constants(e.cfg()).K_S; });
    add("k", [](Evaluator& e) { return derive_constants(e.cfg()).K; });
    add("v_inf", [](Evaluator& e) { return derive_constants(e.cfg()).v_inf; });
    add("sigma", [](Evaluator& e) { return derive_constants(e.cfg()).sigma; });
    add("theta", [](Evaluator& e) { return derive_constants(e.cfg()).Theta; });
    add("theta_bar", [](Evaluator& e) { return derive_constants(e.cfg()).Theta_bar; });

    add("eps_bh", [](Evaluator& e) { return epsilon_suite(e.cfg()).eps_BH; });
    add("eps_rs", [](Evaluator& e) { return epsilon_suite(e.cfg()).eps_RS; });
    add("eps_ssl", [](Evaluator& e) { return epsilon_suite(e.cfg()).eps_SSl; });
    add("eps_mm", [](Evaluator& e) { return epsilon_suite(e.cfg()).eps_MM; });
    add("eps_opt", [](Evaluator& e) { return epsilon_suite(e.cfg()).eps_opt; });
    add("eta", [](Evaluator& e) { return epsilon_suite(e.cfg()).eta; });

    add("delta_star", [](Evaluator& e) { return delta_star(e.cfg()).value; });
    add("delta_star_simple", [](Evaluator& e) { return delta_star(e.cfg()).simple_bound; });
    add("delta_star_simple_valid",
        [flag](Evaluator& e) { return flag(delta_star(e.cfg()).simple_bound_valid); });

    add("eps_l", [](Evaluator& e) { return slow_error_params(e.cfg(), e.q()).eps_L; });
    add("eps_w", [](Evaluator& e) { return slow_error_params(e.cfg(), e.q()).eps_W; });
    add("eps_dd", [](Evaluator& e) { return slow_error_params(e.cfg(), e.q()).eps_dd; });
    add("eps_dag_l", [](Evaluator& e) { return slow_error_params(e.cfg(), e.q()).eps_dag_L; });
    add("eps_dag_m", [](Evaluator& e) { return slow_error_params(e.cfg(), e.q()).eps_dag_M; });
    add("eps_s_l", [](Evaluator& e) { return slow_error_params(e.cfg(), e.q()).eps_S_L; });
    add("eps_s_m", [](Evaluator& e) { return slow_error_params(e.cfg(), e.q()).eps_S_M; });
    add("big_delta_star", [](Evaluator& e) { return slow_error_params(e.cfg(), e.q()).Delta_star; });
    add("big_delta_dstar", [](Evaluator& e) { return slow_error_params(e.cfg(), e.q()).Delta_dstar; });
    add("t_star", [](Evaluator& e) { return slow_error_params(e.cfg(), e.q()).t_star; });

    add("t_ssl", [](Evaluator& e) { return crossing_time_bounds(e.cfg(), e.q()).t_SSl; });
    add("lambda", [](Evaluator& e) { return crossing_time_bounds(e.cfg(), e.q()).lambda; });
    add("t_ell", [](Evaluator& e) { return crossing_time_bounds(e.cfg(), e.q()).t_ell; });
    add("t_ell_dagger", [](Evaluator& e) { return crossing_time_bounds(e.cfg(), e.q()).t_ell_dagger; });
    add("t_ell_dagger_asym",
        [](Evaluator& e) { return crossing_time_bounds(e.cfg(), e.q()).t_ell_dagger_asymptotic; });
    add("c_q", [](Evaluator& e) { return crossing_time_bounds(e.cfg(), e.q()).C_q; });
    add("c_star", [](Evaluator& e) { return crossing_time_bounds(e.cfg(), e.q()).C_star; });
    add("t_u_q", [](Evaluator& e) { return crossing_time_bounds(e.cfg(), e.q()).t_u_q; });
    add("t_u_dagger_q", [](Evaluator& e) { return crossing_time_bounds(e.cfg(), e.q()).t_u_dagger_q; });
    add("t_u_dagger_q_asym",
        [](Evaluator& e) { return crossing_time_bounds(e.cfg(), e.q()).t_u_dagger_q_asymptotic; });
    add("t_u_dagger_1", [](Evaluator& e) { return crossing_time_bounds(e.cfg(), e.q()).t_u_dagger_1; });
    add("t_u_dagger_1_asym",
        [](Evaluator& e) { return crossing_time_bounds(e.cfg(), e.q()).t_u_dagger_1_asymptotic; });
    add("gap_rel", [](Evaluator& e) { return crossing_time_bounds(e.cfg(), e.q()).gap_rel; });
    add("t_hat", [](Evaluator& e) { return lyapunov_settling_time(e.cfg()); });
    add("eq_l_est_bound", [](Evaluator& e) { return settled_offset_bound(e.cfg()); });

    add("threshold_eps", [](Evaluator& e) { return check_upper_time_hypotheses(e.cfg(), e.q()).threshold_eps; });
    add("hyp_all_hold", [flag](Evaluator& e) { return flag(check_upper_time_hypotheses(e.cfg(), e.q()).all_hold); });

    add("depletion_lower", [](Evaluator& e) { return depletion_bounds(e.cfg(), e.q()).lower; });
    add("depletion_lower_valid", [flag](Evaluator& e) { return flag(depletion_bounds(e.cfg(), e.q()).lower_valid); });
    add("depletion_upper", [](Evaluator& e) { return depletion_bounds(e.cfg(), e.q()).upper; });
    add("depletion_upper_asym", [](Evaluator& e) { return depletion_bounds(e.cfg(), e.q()).upper_asymptotic; });
    add("depletion_upper_valid", [flag](Evaluator& e) { return flag(depletion_bounds(e.cfg(), e.q()).upper_valid); });

    add("t0_bound_b", [](Evaluator& e) { return t0_bound_exact_b(e.cfg(), e.q()); });
    add("t0_asym", [](Evaluator& e) { return t0_bound_asymptotic(e.cfg(), e.q()); });

    add("asym_eps_ssl", [](Evaluator& e) { return small_k1_asymptotics(e.cfg()).eps_SSl.asymptotic; });
    add("asym_t_ssl", [](Evaluator& e) { return small_k1_asymptotics(e.cfg()).t_SSl.asymptotic; });
    add("asym_t_ell_dagger", [](Evaluator& e) { return small_k1_asymptotics(e.cfg()).t_ell_dagger.asymptotic; });
    add("asym_c_star", [](Evaluator& e) { return small_k1_asymptotics(e.cfg()).C_star.asymptotic; });
    add("asym_t_u_dagger_1", [](Evaluator& e) { return small_k1_asymptotics(e.cfg()).t_u_dagger_1.asymptotic; });
    add("asym_depletion", [](Evaluator& e) { return small_k1_asymptotics(e.cfg()).depletion.asymptotic; });
    add("exact_depletion_q1", [](Evaluator& e) { return small_k1_asymptotics(e.cfg()).depletion.exact; });
    add("eps_inf", [](Evaluator& e) { return small_k1_asymptotics(e.cfg()).eps_inf; });

    // Numerical quantities (integration of the full system).
    add("t_cross", [](Evaluator& e) { return e.crossing().t_cross; });
    add("s_cross", [](Evaluator& e) { return e.crossing().s_cross; });
    add("c_cross", [](Evaluator& e) { return e.crossing().c_cross; });
    add("depletion_measured",
        [](Evaluator& e) { return (e.cfg().s0 - e.crossing().s_cross) / e.cfg().s0; });
    add("t0_bound_a", [](Evaluator& e) { return t0_bound_exact_a(e.cfg(), e.crossing()); });
    add("err_z_at_cross", [](Evaluator& e) {
      const auto& x = e.crossing();
      const double z = schnell_mendoza(e.cfg().s0, 0.0, x.t_cross, e.cfg(), 0.0).s_lower;
      return std::abs(z - x.s_cross) / e.cfg().s0;
    });
    add("max_err_t0_transient", [](Evaluator& e) {
      return e.max_error(0.0, e.cfg().s0, 0.0, e.crossing().t_cross);
    });
    add("max_err_t0", [](Evaluator& e) {
      return e.max_error(0.0, e.cfg().s0, 0.0, std::numeric_limits<double>::infinity());
    });
    add("max_err_slow", [](Evaluator& e) {
      const auto& x = e.crossing();
      return e.max_error(x.t_cross, x.s_cross, x.t_cross, std::numeric_limits<double>::infinity());
    });
    return r;
  }();
  return reg;
}

const QuantityFn* find_quantity(const std::string& name) {
  for (const auto& [n, fn] : registry()) {
    if (n == name) return &fn;
  }
  return nullptr;
}

std::string joined_names() {
  std::string s;
  for (const auto& n : quantity_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

double evaluate(Evaluator& ev, const std::string& name) {
  const QuantityFn* fn = find_quantity(name);
  if (!fn) throw UsageError("unknown quantity '" + name + "'; valid names: " + joined_names());
  try {
    return (*fn)(ev);
  } catch (const DomainError&) {
    return kNaN;
  } catch (const InvalidInput&) {
    return kNaN;
  }
}

}  // namespace

const std::vector<std::string>& quantity_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

double evaluate_quantity(const std::string& name, const RunConfig& rc) {
  Evaluator ev(rc);
  return evaluate(ev, name);
}

// ---------------------------------------------------------------------------
// Sweeps.

namespace {

double& axis_slot(ReactionConfig& c, const std::string& axis) {
  if (axis == "e0") return c.e0;
  if (axis == "s0") return c.s0;
  if (axis == "k1") return c.rates.k1;
  if (axis == "k_m1") return c.rates.k_m1;
  if (axis == "k2") return c.rates.k2;
  throw UsageError("unknown sweep axis '" + axis + "'; valid axes: e0, s0, k1, k_m1, k2");
}

}  // namespace

Json to_json(const SweepSpec& spec) {
  return {{"base", to_json(spec.base)},      {"axis", spec.axis},
          {"values", spec.values},           {"q", spec.q},
          {"outputs", spec.outputs},         {"integration", to_json(spec.integration)}};
}

SweepTable run_sweep(const SweepSpec& spec) {
  ReactionConfig probe = spec.base;
  axis_slot(probe, spec.axis);
  if (spec.values.empty()) throw UsageError("sweep needs at least one value");
  for (double v : spec.values) {
    if (!(v > 0.0 && std::isfinite(v))) throw UsageError("sweep values must be positive");
  }
  if (spec.outputs.empty()) throw UsageError("sweep needs at least one output quantity");
  for (const auto& name : spec.outputs) {
    if (!find_quantity(name)) {
      throw UsageError("unknown quantity '" + name + "'; valid names: " + joined_names());
    }
  }
  SweepTable table;
  table.columns.push_back(spec.axis);
  table.columns.insert(table.columns.end(), spec.outputs.begin(), spec.outputs.end());
  for (double v : spec.values) {
    RunConfig rc{spec.base, spec.q, spec.integration};
    axis_slot(rc.reaction, spec.axis) = v;
    Evaluator ev(rc);
    std::vector<double> row{v};
    for (const auto& name : spec.outputs) row.push_back(evaluate(ev, name));
    table.rows.push_back(std::move(row));
  }
  return table;
}

SweepTable sweep(const SweepSpec& spec, const std::string& out_path) {
  SweepTable table = run_sweep(spec);
  const fs::path p(out_path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  CsvWriter csv(out_path);
  csv.comment("manifest_hash=" + hex64(fnv1a64(to_json(spec).dump())));
  csv.header(table.columns);
  for (const auto& row : table.rows) csv.row(row);
  return table;
}

// ---------------------------------------------------------------------------
// Figures.

namespace {

ReactionConfig make_config(double k1, double k_m1, double k2, double s0, double e0) {
  return ReactionConfig{{k1, k_m1, k2}, s0, e0};
}

struct Panel {
  std::string name;
  ReactionConfig config;
};

struct FigureSpec {
  std::vector<Panel> panels;
  bool e0_grid = false;  // panels sweep e0 over figure_e0_grid()
};

FigureSpec figure_spec(const std::string& id) {
  const ReactionConfig ww_top = make_config(2, 100, 100, 10, 10);
  const ReactionConfig ww_bottom = make_config(2, 100, 100, 10, 1);
  const ReactionConfig xx_bottom = make_config(2, 100, 100, 100, 1);
  if (id == "fig1") return {{{"main", make_config(1, 10, 10, 100, 5)}}, false};
  if (id == "fig2" || id == "figyy") {
    return {{{"top_left", make_config(1, 100, 100, 2, 1)},
             {"top_right", make_config(1, 100, 100, 20, 1)},
             {"bottom_left", make_config(1, 100, 100, 200, 1)},
             {"bottom_right", make_config(1, 100, 100, 2000, 1)}},
            true};
  }
  if (id == "figww") return {{{"top", ww_top}, {"bottom", ww_bottom}}, false};
  if (id == "figxx" || id == "figxxz") return {{{"top", ww_top}, {"bottom", xx_bottom}}, false};
  if (id == "figzz") {
    return {{{"top", make_config(2, 100, 1, 10, 1)}, {"bottom", make_config(2, 1, 100, 10, 1)}},
            true};
  }
  std::string ids;
  for (const auto& f : figure_ids()) ids += (ids.empty() ? "" : ", ") + f;
  throw UsageError("unknown figure id '" + id + "'; valid ids: " + ids);
}

void write_header(CsvWriter& csv, const std::string& hash, const std::string& id,
                  const std::string& panel) {
  csv.comment("manifest_hash=" + hash);
  csv.comment("figure=" + id + " panel=" + panel);
}

void emit_fig1(const Panel& p, const IntegrationOptions& opt, const fs::path& dir,
               const std::string& hash, std::vector<std::string>& files) {
  const VerificationContext ctx = prepare_verification(p.config, opt);
  {
    const fs::path f = dir / "trajectory.csv";
    CsvWriter csv(f.string());
    write_header(csv, hash, "fig1", p.name);
    write_trajectory_csv(csv, ctx.trajectory, &*ctx.crossing);
    files.push_back(f.string());
  }
  const fs::path f = dir / "nullclines.csv";
  CsvWriter csv(f.string());
  write_header(csv, hash, "fig1", p.name);
  const double ds = delta_star(p.config).value;
  csv.header({"s", "g_s", "g1_s", "g_delta_star_s"});
  const int n = 200;
  for (int i = 0; i <= n; ++i) {
    const double s = p.config.s0 * i / n;
    csv.row({s, qss_manifold(s, p.config), qss_manifold(s, p.config, 1.0),
             qss_manifold(s, p.config, ds)});
  }
  files.push_back(f.string());
}

void emit_grid(const std::string& id, const Panel& p, const IntegrationOptions& opt,
               const fs::path& dir, const std::string& hash, std::vector<std::string>& files) {
  const fs::path f = dir / (p.name + ".csv");
  CsvWriter csv(f.string());
  write_header(csv, hash, id, p.name);
  std::vector<std::string> cols;
  if (id == "fig2") {
    cols = {"s0",     "e0",           "sigma",             "eps_rs",       "eps_ssl",
            "t_cross", "t_ell_dagger", "t_ell_dagger_asym", "t_u_dagger_1", "t_u_dagger_1_asym",
            "t_u_dagger_q", "hyp_all_hold"};
  } else {
    cols = {"s0", "e0", "sigma", "eps_rs", "eps_ssl", "eta", "eps_opt", "t_cross", "err_z_at_cross"};
  }
  csv.header(cols);
  for (double e0 : figure_e0_grid()) {
    ReactionConfig c = p.config;
    c.e0 = e0;
    Evaluator ev(RunConfig{c, kDefaultQ, opt});
    std::vector<double> row;
    for (const auto& name : cols) row.push_back(evaluate(ev, name));
    csv.row(row);
  }
  files.push_back(f.string());
}

void emit_series(const std::string& id, const Panel& p, const IntegrationOptions& opt,
                 const fs::path& dir, const std::string& hash, std::vector<std::string>& files) {
  const ReactionConfig& c = p.config;
  const VerificationContext ctx = prepare_verification(c, opt);
  const CrossingRecord& x = *ctx.crossing;
  const EpsilonSuite es = epsilon_suite(c);
  const double s0 = c.s0;
  const fs::path f = dir / (p.name + ".csv");
  CsvWriter csv(f.string());
  write_header(csv, hash, id, p.name);
  csv.comment("t_cross=" + format_number(x.t_cross));

  if (id == "figww") {
    const SlowErrorParams sp = slow_error_params(c);
    csv.header({"t", "t_rel", "t_inf", "s", "xi", "err", "eps_l", "eps_w", "eps_opt"});
    auto emit = [&](double t, double s) {
      const double xi = schnell_mendoza(x.s_cross, x.t_cross, t, c, 0.0).s_lower;
      const double rel = t - x.t_cross;
      csv.row({t, rel, t_infinity(rel), s, xi, std::abs(xi - s) / s0, sp.eps_L, sp.eps_W,
               es.eps_opt});
    };
    emit(x.t_cross, x.s_cross);
    const auto times = ctx.trajectory.times();
    const auto states = ctx.trajectory.states();
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (times[i] > x.t_cross) emit(times[i], states[i][0]);
    }
  } else if (id == "figxx") {
    const double bound_a = t0_bound_exact_a(c, x);
    csv.header({"tau", "t", "s", "z", "err", "bound_running", "bound_exact_a"});
    ctx.trajectory.for_each_sample(kSamplesPerStep, [&](double t, const Vec<2>& y) {
      if (t > x.t_cross) return;
      const double z = schnell_mendoza(s0, 0.0, t, c, 0.0).s_lower;
      csv.row({t / x.t_cross, t, y[0], z, (z - y[0]) / s0, t0_bound_running(t, c, x), bound_a});
    });
    const double z = schnell_mendoza(s0, 0.0, x.t_cross, c, 0.0).s_lower;
    csv.row({1.0, x.t_cross, x.s_cross, z, (z - x.s_cross) / s0, t0_bound_running(x.t_cross, c, x),
             bound_a});
  } else {  // figxxz
    csv.header({"t", "t_inf", "s", "z", "err", "eps_opt"});
    const auto times = ctx.trajectory.times();
    const auto states = ctx.trajectory.states();
    bool pending = true;
    auto emit = [&](double t, double s) {
      const double z = schnell_mendoza(s0, 0.0, t, c, 0.0).s_lower;
      csv.row({t, t_infinity(t), s, z, std::abs(s - z) / s0, es.eps_opt});
    };
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (pending && x.t_cross <= times[i]) {
        csv.comment("event=crossing");
        emit(x.t_cross, x.s_cross);
        pending = false;
      }
      emit(times[i], states[i][0]);
    }
  }
  files.push_back(f.string());
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig1",  "fig2",  "figww", "figxx",
                                            "figyy", "figzz", "figxxz"};
  return ids;
}

FigureDataset run_figure(const std::string& figure_id, const std::string& out_dir,
                         const IntegrationOptions& options) {
  const FigureSpec spec = figure_spec(figure_id);
  validate_options(options);

  Json manifest;
  manifest["figure_id"] = figure_id;
  Json panels = Json::array();
  for (const auto& p : spec.panels) {
    Json pj{{"name", p.name}, {"config", to_json(p.config)}};
    if (spec.e0_grid) pj["config"].erase("e0");
    panels.push_back(pj);
  }
  manifest["panels"] = panels;
  if (spec.e0_grid) manifest["e0_grid"] = figure_e0_grid();
  manifest["q"] = kDefaultQ;
  manifest["integration"] = to_json(options);
  const std::string hash = hex64(fnv1a64(manifest.dump()));

  const fs::path dir = fs::path(out_dir) / figure_id;
  fs::create_directories(dir);
  FigureDataset ds;
  ds.figure_id = figure_id;
  ds.manifest_hash = hash;
  for (const auto& p : spec.panels) {
    if (figure_id == "fig1") {
      emit_fig1(p, options, dir, hash, ds.files);
    } else if (spec.e0_grid) {
      emit_grid(figure_id, p, options, dir, hash, ds.files);
    } else {
      emit_series(figure_id, p, options, dir, hash, ds.files);
    }
  }
  manifest["manifest_hash"] = hash;
  const fs::path mpath = dir / "manifest.json";
  std::ofstream(mpath) << manifest.dump(2) << '\n';
  ds.files.push_back(mpath.string());
  ds.manifest = std::move(manifest);
  return ds;
}

}  // namespace qssa
