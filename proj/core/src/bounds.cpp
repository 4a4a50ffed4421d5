#include "qssa/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qssa/errors.hpp"
#include "qssa/mass_action.hpp"

namespace qssa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_q(double q, double lo, bool lo_closed, double hi, bool hi_closed) {
  const bool ok = (lo_closed ? q >= lo : q > lo) && (hi_closed ? q <= hi : q < hi);
  if (!ok) {
    throw InvalidInput("q=" + std::to_string(q) + " outside " + (lo_closed ? "[" : "(") +
                       std::to_string(lo) + ", " + std::to_string(hi) + (hi_closed ? "]" : ")"));
  }
}

double eps_ssl(const ReactionConfig& config) { return epsilon_suite(config).eps_SSl; }

}  // namespace

double lyapunov_l2_bound(double t, double t0, double L0, const ReactionConfig& config,
                         double coefficient) {
  if (!(t >= t0)) throw InvalidInput("lyapunov_l2_bound: t must not precede t0");
  const EpsilonSuite e = epsilon_suite(config);
  const double rate = config.rates.k_m1 + config.rates.k2;  // k1 K_M
  const double decay = std::exp(-rate * (t - t0));
  const double floor = coefficient * std::pow(e.eps_SSl * e.eps_MM * config.s0, 2);
  return L0 * L0 * decay + floor * (-std::expm1(-rate * (t - t0)));
}

double lyapunov_settling_time(const ReactionConfig& config) {
  const EpsilonSuite e = epsilon_suite(config);
  return 2.0 / (config.rates.k_m1 + config.rates.k2) * std::log(1.0 / e.eps_MM);
}

double settled_offset_bound(const ReactionConfig& config) {
  const EpsilonSuite e = epsilon_suite(config);
  return std::sqrt(1.5) * e.eps_SSl * e.eps_MM;
}

LinearLyapunovCoefficients linear_lyapunov_coefficients(double s, const ReactionConfig& config) {
  const auto& r = config.rates;
  const double gp = qss_manifold_slope(s, config);
  LinearLyapunovCoefficients c;
  c.A = r.k_m1 + r.k2 + r.k1 * s + gp * (r.k_m1 + r.k1 * s);
  c.B = r.k2 * gp * qss_manifold(s, config);
  return c;
}

LyapunovRateBounds lyapunov_rate_bounds(const ReactionConfig& config, double q) {
  validate_for_bounds(config);
  require_q(q, 0.0, false, 1.0, true);
  const double km = derive_constants(config).K_M;
  const double s0 = config.s0, e0 = config.e0;
  const auto& r = config.rates;
  LyapunovRateBounds b;
  b.A_upper = r.k1 * (km + e0 + s0);
  b.B_upper = r.k2 * (e0 * s0 / (km + s0)) * (e0 / km);
  b.A_lower = r.k1 * (km + q * s0);
  b.B_lower = r.k2 * (q * e0 * s0 / (km + q * s0)) * (e0 * km / ((km + s0) * (km + s0)));
  return b;
}

TransientBounds crossing_time_bounds(const ReactionConfig& config, double q) {
  require_q(q, 0.0, false, 1.0, true);
  const EpsilonSuite es = epsilon_suite(config);
  const auto& r = config.rates;
  const double km = derive_constants(config).K_M;
  const double s0 = config.s0;
  const double e = es.eps_SSl;
  const double ratio = (r.k_m1 + r.k2) / r.k2;
  const double log_inv = -std::log(e);

  TransientBounds b;
  b.q = q;
  b.eps = e;
  b.t_SSl = t_ssl(config);
  b.lambda = r.k1 * (km + s0);
  b.t_ell = std::log1p(ratio * (1.0 + e) / e) / (b.lambda * (1.0 + e));
  b.t_ell_dagger = b.t_SSl * (1.0 - e) * (log_inv + std::log(ratio));
  const double a = r.k_m1 + r.k2 + q * r.k1 * s0;
  b.C_q = a * a / (q * r.k2 * (r.k_m1 + r.k2));
  b.C_star = c_star(config);
  b.t_u_q = std::log1p(b.C_q / e) / (r.k1 * (km + q * s0));
  const double log_q = std::log1p(b.C_star / (q * e));
  b.t_u_dagger_q = b.t_SSl / q * log_q;
  b.t_u_dagger_1 = b.t_SSl * std::log1p(b.C_star / e);
  b.gap_rel = (1.0 - q) / q * (1.0 + log_q) / log_q;
  b.t_hat = lyapunov_settling_time(config);

  b.t_ell_dagger_asymptotic = b.t_SSl * (log_inv + std::log(ratio));
  b.t_u_dagger_q_asymptotic = b.t_SSl / q * (log_inv + std::log(b.C_star / q));
  b.t_u_dagger_1_asymptotic = b.t_SSl * (log_inv + std::log(b.C_star));
  return b;
}

HypothesisReport check_upper_time_hypotheses(double C_star, double eps, double q) {
  require_q(q, 0.5, true, 1.0, false);
  if (!(C_star > 0.0) || !(eps > 0.0)) throw InvalidInput("C* and eps must be positive");
  HypothesisReport h;
  h.q = q;
  h.C_star = C_star;
  h.eps = eps;
  const double B = q * std::log(1.0 / q);
  h.cond_q_log_value = 4.0 * B * std::log(4.0 * C_star);
  h.threshold_eps = 9.0 / 16.0 * B * B;
  h.cond_q_log = h.cond_q_log_value < 1.0;
  h.cond_eps_e = eps < std::exp(-1.0);
  h.cond_eps_q = eps <= h.threshold_eps;
  h.all_hold = h.cond_q_log && h.cond_eps_e && h.cond_eps_q;
  return h;
}

HypothesisReport check_upper_time_hypotheses(const ReactionConfig& config, double q) {
  return check_upper_time_hypotheses(c_star(config), eps_ssl(config), q);
}

double onset_time(const ReactionConfig& config, double M_star) {
  if (!(M_star > 0.0)) throw InvalidInput("M* must be positive");
  return t_ssl(config) * std::log(M_star / eps_ssl(config));
}

DepletionBounds depletion_bounds(const ReactionConfig& config, double q, double r) {
  require_q(q, 0.0, false, 1.0, false);
  if (!(r > 0.0 && r <= 1.0)) throw InvalidInput("r must lie in (0, 1]");
  const auto& k = config.rates;
  const double km = derive_constants(config).K_M;
  const double e = eps_ssl(config);
  const double cs = c_star(config);

  DepletionBounds d;
  d.q = q;
  d.r = r;
  const double log_term = std::log(k.k1 * km / (e * k.k2));
  const double base = k.k2 / (k.k1 * (km + config.s0)) * e * (1.0 - e) * log_term;
  d.lower = 0.5 * base;
  d.lower_sharp = (1.0 - 0.5 * r) * base;
  d.lower_condition_value = e * log_term;
  d.lower_valid = d.lower_condition_value < 1.0;
  d.lower_sharp_valid = d.lower_condition_value < r;

  d.gamma = e / q * std::log1p(cs / (q * e));
  d.upper = d.gamma;
  d.upper_asymptotic = (e * -std::log(e) + e * std::log(cs / q)) / q;
  d.s_at_t_u_dagger_ratio = std::exp(-d.gamma);
  d.upper_valid = q >= 0.5 && check_upper_time_hypotheses(cs, e, q).all_hold && d.gamma < 1.0;

  d.Delta_star = e * (-std::log(e) + std::log(cs));
  d.Delta_dstar = e * -std::log(e);
  return d;
}

ErrorBounds slow_phase_error_bounds(const ReactionConfig& config, double q, double s_star,
                                    double s_tilde) {
  validate_for_bounds(config);
  require_q(q, 0.0, false, 1.0, true);
  for (double s : {s_star, s_tilde}) {
    if (!(s > 0.0 && s <= config.s0)) throw InvalidInput("s_star and s_tilde must lie in (0, s0]");
  }
  const EpsilonSuite es = epsilon_suite(config);
  const SlowErrorParams p = slow_error_params(config, q);
  const double s0 = config.s0;

  ErrorBounds b;
  b.L2_bound_fn = [config, L0 = s0 * es.eps_SSl](double t) {
    return lyapunov_l2_bound(t, 0.0, L0, config);
  };
  b.eqLest_bound = settled_offset_bound(config);
  b.t_hat = lyapunov_settling_time(config);
  b.eps_L = p.eps_L;
  b.eps_W = p.eps_W;
  b.eps_opt = es.eps_opt;
  const double mismatch = std::abs(s_star - s_tilde);
  b.total_with_L = mismatch + s0 * p.eps_L;
  b.total_with_W = mismatch + s0 * p.eps_W;
  b.corollary_with_L = p.depletion_term_q + p.eps_L;
  b.corollary_with_W = p.depletion_term_q + p.eps_W;
  b.corollary_valid = q >= 0.5 && q < 1.0 && check_upper_time_hypotheses(config, q).all_hold;
  b.t0_bound_a = kNaN;
  b.t0_bound_b = b.corollary_valid ? t0_bound_exact_b(config, q) : kNaN;
  b.t0_asymptotic = es.eps_opt / q;
  return b;
}

double t0_bound_exact_a(const ReactionConfig& config, const CrossingRecord& crossing) {
  const DerivedConstants d = derive_constants(config);
  const double e = eps_ssl(config);
  return e * (config.s0 + d.K_S) / (crossing.s_cross + d.K_M) *
         std::exp(config.rates.k1 * config.s0 * e * crossing.t_cross);
}

double t0_bound_exact_b(const ReactionConfig& config, double q) {
  const HypothesisReport h = check_upper_time_hypotheses(config, q);
  if (!h.all_hold) {
    throw InvalidInput("exact_b bound needs the upper crossing-time hypotheses, which fail for q=" +
                       std::to_string(q));
  }
  const DerivedConstants d = derive_constants(config);
  const double e = h.eps;
  const double s0 = config.s0;
  const double expo = config.rates.k1 * s0 * t_ssl(config) * e * std::log1p(h.C_star / (q * e)) / q;
  return e / q * (s0 + d.K_S) / (s0 + d.K_M) * std::exp(expo);
}

double t0_bound_running(double t, const ReactionConfig& config, const CrossingRecord& crossing) {
  if (!(t >= 0.0)) throw InvalidInput("t must be non-negative");
  const DerivedConstants d = derive_constants(config);
  const double e = eps_ssl(config);
  const double s0 = config.s0;
  const double k1 = config.rates.k1;
  return e * (d.K_S + s0) / (d.K_M + crossing.s_cross + e * s0) *
         (std::exp(k1 * e * s0 * t) - std::exp(-k1 * (d.K_M + crossing.s_cross) * t));
}

double t0_bound_asymptotic(const ReactionConfig& config, double q) {
  require_q(q, 0.0, false, 1.0, true);
  return epsilon_suite(config).eps_opt / q;
}

T0Bound t0_error_bound(const ReactionConfig& config, double q, T0Mode mode,
                       const CrossingRecord* crossing) {
  T0Bound b;
  b.mode = mode;
  switch (mode) {
    case T0Mode::exact_a:
      if (!crossing) throw InvalidInput("exact_a bound needs a crossing record");
      b.value = t0_bound_exact_a(config, *crossing);
      break;
    case T0Mode::exact_b:
      b.value = t0_bound_exact_b(config, q);
      break;
    case T0Mode::running:
      if (!crossing) throw InvalidInput("running bound needs a crossing record");
      validate_for_bounds(config);
      b.value = kNaN;
      b.running = [config, rec = *crossing](double t) { return t0_bound_running(t, config, rec); };
      break;
  }
  return b;
}

SmallK1Asymptotics small_k1_asymptotics(const ReactionConfig& config) {
  const EpsilonSuite es = epsilon_suite(config);
  const TransientBounds tb = crossing_time_bounds(config, 1.0);
  const auto& r = config.rates;
  const double sum = r.k_m1 + r.k2;
  const double ratio = sum / r.k2;
  const double lead = -std::log(es.eps_RS) + std::log(ratio);

  SmallK1Asymptotics a;
  a.eps_SSl = {es.eps_RS, es.eps_SSl};
  a.t_SSl = {1.0 / sum, tb.t_SSl};
  a.t_ell_dagger = {lead / sum, tb.t_ell_dagger};
  a.C_star = {ratio, tb.C_star};
  a.t_u_dagger_1 = {lead / sum, tb.t_u_dagger_1};
  a.depletion = {es.eps_RS * lead, es.eps_SSl * std::log1p(tb.C_star / es.eps_SSl)};
  a.eps_inf = es.eps_RS * r.k_m1 / sum;
  return a;
}

}  // namespace qssa
