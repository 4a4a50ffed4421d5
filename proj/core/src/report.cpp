#include "qssa/report.hpp"

#include <cmath>

#include "qssa/errors.hpp"

namespace qssa {

namespace {

// NaN and infinities become null.
Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

const char* severity_name(Severity s) { return s == Severity::hard ? "hard" : "soft"; }

}  // namespace

Json to_json(const ReactionConfig& c) {
  return {{"k1", c.rates.k1}, {"k_m1", c.rates.k_m1}, {"k2", c.rates.k2},
          {"s0", c.s0},       {"e0", c.e0}};
}

Json to_json(const IntegrationOptions& o) {
  Json j{{"rel_tol", o.rel_tol}};
  j["abs_tol"] = o.abs_tol ? Json(*o.abs_tol) : Json("auto");
  j["t_end"] = o.t_end ? Json(*o.t_end) : Json("auto");
  j["max_steps"] = o.max_steps;
  j["event_tol"] = o.event_tol ? Json(*o.event_tol) : Json("auto");
  return j;
}

Json to_json(const DerivedConstants& d) {
  return {{"k_m", num(d.K_M)},     {"k_s", num(d.K_S)},         {"k", num(d.K)},
          {"v_inf", num(d.v_inf)}, {"sigma", num(d.sigma)},     {"theta", num(d.Theta)},
          {"theta_bar", num(d.Theta_bar)}};
}

Json to_json(const EpsilonSuite& e) {
  return {{"eps_bh", num(e.eps_BH)},   {"eps_rs", num(e.eps_RS)}, {"eps_ssl", num(e.eps_SSl)},
          {"eps_mm", num(e.eps_MM)},   {"eps_opt", num(e.eps_opt)}, {"eta", num(e.eta)}};
}

Json to_json(const DeltaStar& d) {
  return {{"delta_star", num(d.value)},
          {"delta_star_intermediate", num(d.intermediate_bound)},
          {"delta_star_simple", num(d.simple_bound)},
          {"delta_star_simple_valid", d.simple_bound_valid}};
}

Json to_json(const SlowErrorParams& p) {
  return {{"eps_l", num(p.eps_L)},         {"eps_w", num(p.eps_W)},
          {"eps_dd", num(p.eps_dd)},       {"eps_dag_l", num(p.eps_dag_L)},
          {"eps_dag_m", num(p.eps_dag_M)}, {"eps_s_l", num(p.eps_S_L)},
          {"eps_s_m", num(p.eps_S_M)},     {"big_delta_star", num(p.Delta_star)},
          {"big_delta_dstar", num(p.Delta_dstar)}, {"t_star", num(p.t_star)},
          {"depletion_term_q", num(p.depletion_term_q)}};
}

Json to_json(const TransientBounds& b) {
  return {{"q", b.q},
          {"eps_ssl", num(b.eps)},
          {"t_ssl", num(b.t_SSl)},
          {"lambda", num(b.lambda)},
          {"t_ell", num(b.t_ell)},
          {"t_ell_dagger", num(b.t_ell_dagger)},
          {"c_q", num(b.C_q)},
          {"c_star", num(b.C_star)},
          {"t_u_q", num(b.t_u_q)},
          {"t_u_dagger_q", num(b.t_u_dagger_q)},
          {"t_u_dagger_1", num(b.t_u_dagger_1)},
          {"gap_rel", num(b.gap_rel)},
          {"t_hat", num(b.t_hat)},
          {"asymptotic",
           {{"t_ell_dagger", num(b.t_ell_dagger_asymptotic)},
            {"t_u_dagger_q", num(b.t_u_dagger_q_asymptotic)},
            {"t_u_dagger_1", num(b.t_u_dagger_1_asymptotic)}}}};
}

Json to_json(const HypothesisReport& h) {
  return {{"q", h.q},
          {"c_star", num(h.C_star)},
          {"eps_ssl", num(h.eps)},
          {"cond_q_log_value", num(h.cond_q_log_value)},
          {"threshold_eps", num(h.threshold_eps)},
          {"cond_q_log", h.cond_q_log},
          {"cond_eps_e", h.cond_eps_e},
          {"cond_eps_q", h.cond_eps_q},
          {"all_hold", h.all_hold}};
}

Json to_json(const DepletionBounds& d) {
  return {{"q", d.q},
          {"r", d.r},
          {"lower", num(d.lower)},
          {"lower_sharp", num(d.lower_sharp)},
          {"upper", num(d.upper)},
          {"upper_asymptotic", num(d.upper_asymptotic)},
          {"big_delta_star", num(d.Delta_star)},
          {"big_delta_dstar", num(d.Delta_dstar)},
          {"gamma", num(d.gamma)},
          {"s_at_t_u_dagger_ratio_min", num(d.s_at_t_u_dagger_ratio)},
          {"lower_condition_value", num(d.lower_condition_value)},
          {"conds",
           {{"lower_valid", d.lower_valid},
            {"lower_sharp_valid", d.lower_sharp_valid},
            {"upper_valid", d.upper_valid}}}};
}

Json to_json(const ErrorBounds& b) {
  return {{"eq_l_est_bound", num(b.eqLest_bound)},
          {"t_hat", num(b.t_hat)},
          {"eps_l", num(b.eps_L)},
          {"eps_w", num(b.eps_W)},
          {"eps_opt", num(b.eps_opt)},
          {"total_with_l", num(b.total_with_L)},
          {"total_with_w", num(b.total_with_W)},
          {"corollary_with_l", num(b.corollary_with_L)},
          {"corollary_with_w", num(b.corollary_with_W)},
          {"corollary_valid", b.corollary_valid},
          {"t0_bound_b", num(b.t0_bound_b)},
          {"t0_asymptotic", num(b.t0_asymptotic)}};
}

Json to_json(const SmallK1Asymptotics& a) {
  auto pair = [](const AsymptoticPair& p) {
    return Json{{"asymptotic", num(p.asymptotic)}, {"exact", num(p.exact)}};
  };
  return {{"eps_ssl", pair(a.eps_SSl)},
          {"t_ssl", pair(a.t_SSl)},
          {"t_ell_dagger", pair(a.t_ell_dagger)},
          {"c_star", pair(a.C_star)},
          {"t_u_dagger_1", pair(a.t_u_dagger_1)},
          {"depletion", pair(a.depletion)},
          {"eps_inf", {{"asymptotic", num(a.eps_inf)}, {"undefined_in_text", a.eps_inf_undefined_in_text}}}};
}

Json to_json(const CrossingRecord& r) {
  return {{"t_cross", num(r.t_cross)},
          {"s_cross", num(r.s_cross)},
          {"c_cross", num(r.c_cross)},
          {"refinement_width", num(r.refinement_width)},
          {"sign_changes", r.sign_changes}};
}

Json to_json(const CheckResult& r) {
  return {{"name", r.name},
          {"passed", r.passed},
          {"skipped", r.skipped},
          {"severity", severity_name(r.severity)},
          {"worst_margin", num(r.worst_margin)},
          {"worst_t", num(r.worst_t)},
          {"slack", num(r.slack)},
          {"notes", r.notes}};
}

Json to_json(const std::vector<CheckResult>& results) {
  Json arr = Json::array();
  for (const auto& r : results) arr.push_back(to_json(r));
  return arr;
}

Json bound_report(const ReactionConfig& config, double q) {
  Json j;
  j["config"] = to_json(config);
  j["q"] = q;
  j["transient"] = to_json(crossing_time_bounds(config, q));
  j["hypotheses"] = (q >= 0.5 && q < 1.0) ? to_json(check_upper_time_hypotheses(config, q))
                                          : Json(nullptr);
  j["depletion"] = (q > 0.0 && q < 1.0) ? to_json(depletion_bounds(config, q)) : Json(nullptr);
  try {
    j["delta_star"] = to_json(delta_star(config));
    j["slow_error"] = to_json(slow_phase_error_bounds(config, q, config.s0, config.s0));
  } catch (const DomainError& e) {
    j["delta_star"] = Json(nullptr);
    j["slow_error"] = Json(nullptr);
    j["domain_error"] = e.what();
  }
  return j;
}

Json quick_reference(const ReactionConfig& config, double q) {
  if (!(config.s0 > 0.0 && config.e0 > 0.0)) {
    throw UsageError("report needs s0 > 0 and e0 > 0 (the small parameters are undefined otherwise)");
  }
  const DerivedConstants d = derive_constants(config);
  const EpsilonSuite e = epsilon_suite(config);
  const double tssl = t_ssl(config);
  const double log_inv = -std::log(e.eps_SSl);

  Json j;
  j["config"] = to_json(config);
  j["q"] = q;
  j["table1"] = {{"k_m", d.K_M}, {"k", d.K}, {"k_s", d.K_S}, {"v_inf", d.v_inf}};
  j["table2"] = {{"eps_ssl", e.eps_SSl}, {"t_ssl", tssl}};
  auto row = [](const char* symbol, const char* expression, const char* description, double value,
                const char* reliability) {
    return Json{{"symbol", symbol},
                {"expression", expression},
                {"description", description},
                {"value", value},
                {"reliability", reliability}};
  };
  j["table3"] = Json::array({
      row("big_delta_dstar", "-eps_ssl log(eps_ssl)", "substrate depletion in transient",
          e.eps_SSl * log_inv, "++"),
      row("t_cross", "-t_ssl log(eps_ssl)", "QSS onset time", tssl * log_inv, "++"),
      row("eps_dd", "-eps_ssl log(eps_ssl)", "MM approximation error bound", e.eps_SSl * log_inv,
          "++"),
      row("eps_opt", "eps_ssl (s0 + k_s)/(s0 + k_m)", "MM approximation error bound", e.eps_opt,
          "+"),
      row("eps_ssl", "e0/(s0 + k_m)", "MM approximation error bound", e.eps_SSl, "+"),
  });
  j["derived"] = to_json(d);
  j["epsilons"] = to_json(e);
  try {
    j["slow_error_params"] = to_json(slow_error_params(config, q));
  } catch (const DomainError& err) {
    j["slow_error_params"] = Json(nullptr);
  }
  j["bounds"] = bound_report(config, q);
  j["small_k1_asymptotics"] = to_json(small_k1_asymptotics(config));
  j["metadata"] = {
      {"big_delta_star_note",
       "big_delta_star is preferred over the rigorous depletion lower bound on heuristic grounds; "
       "reported, not asserted"},
      {"eps_inf_note", "eps_inf is listed among the small-k1 asymptotics without a definition"}};
  return j;
}

}  // namespace qssa
