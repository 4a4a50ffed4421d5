#include "qssa/params.hpp"

#include <cmath>
#include <string>

#include "qssa/errors.hpp"

namespace qssa {
namespace {

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }
bool finite_non_negative(double x) { return std::isfinite(x) && x >= 0.0; }

double michaelis(const RateConstants& r) { return (r.k_m1 + r.k2) / r.k1; }

}  // namespace

void validate_rates(const RateConstants& rates) {
  if (!finite_positive(rates.k1)) {
    throw InvalidInput("k1 must be positive and finite, got " + std::to_string(rates.k1));
  }
  if (!finite_non_negative(rates.k_m1)) {
    throw InvalidInput("k_m1 must be non-negative and finite, got " + std::to_string(rates.k_m1));
  }
  if (!finite_positive(rates.k2)) {
    throw InvalidInput("k2 must be positive and finite, got " + std::to_string(rates.k2));
  }
}

void validate_for_simulation(const ReactionConfig& config) {
  validate_rates(config.rates);
  if (!finite_non_negative(config.s0)) throw InvalidInput("s0 must be >= 0");
  if (!finite_non_negative(config.e0)) throw InvalidInput("e0 must be >= 0");
}

void validate_for_bounds(const ReactionConfig& config) {
  validate_rates(config.rates);
  if (!finite_positive(config.s0)) throw InvalidInput("s0 must be > 0 for bound computations");
  if (!finite_positive(config.e0)) throw InvalidInput("e0 must be > 0 for bound computations");
}

DerivedConstants derive_constants(const ReactionConfig& config) {
  validate_for_simulation(config);
  const auto& r = config.rates;
  DerivedConstants d;
  d.K_M = michaelis(r);
  d.K_S = r.k_m1 / r.k1;
  d.K = r.k2 / r.k1;
  d.v_inf = r.k2 * config.e0;
  d.sigma = config.s0 / d.K_M;
  d.Theta = r.k2 / d.K_M;
  d.Theta_bar = d.Theta / r.k1;
  return d;
}

EpsilonSuite epsilon_suite(const ReactionConfig& config) {
  validate_for_bounds(config);
  const auto& r = config.rates;
  const double km = michaelis(r);
  const double ks = r.k_m1 / r.k1;
  EpsilonSuite e;
  e.eps_BH = config.e0 / config.s0;
  e.eps_RS = config.e0 / km;
  e.eps_SSl = config.e0 / (km + config.s0);
  e.eps_MM = e.eps_RS * r.k2 / (r.k_m1 + r.k2);
  e.eta = (ks + config.s0) / (km + config.s0);
  e.eps_opt = e.eta * e.eps_SSl;
  return e;
}

DeltaStar delta_star(const ReactionConfig& config) {
  validate_for_bounds(config);
  const auto& r = config.rates;
  const double km = michaelis(r);
  const double kme = km + config.e0;
  const double x = 4.0 * r.k2 * config.e0 / (r.k1 * kme * kme);
  double disc = 1.0 - x;
  if (disc < -1e-14) {
    throw DomainError("delta_star: negative discriminant " + std::to_string(disc) +
                      " (e0 too large for the invariance estimate)");
  }
  if (disc < 0.0) disc = 0.0;

  DeltaStar d;
  // (k1/(2 k2)) (K_M+e0) (1 - sqrt(1-x)) rewritten without cancellation.
  d.value = 2.0 * config.e0 / (kme * (1.0 + std::sqrt(disc)));
  d.intermediate_bound = (10.0 / 9.0) * config.e0 / kme;
  const double eps_rs = config.e0 / km;
  d.simple_bound = (10.0 / 9.0) * eps_rs;
  d.simple_bound_valid = eps_rs <= 0.1;
  return d;
}

double t_ssl(const ReactionConfig& config) {
  validate_for_simulation(config);
  return 1.0 / (config.rates.k1 * (michaelis(config.rates) + config.s0));
}

double c_star(const ReactionConfig& config) {
  validate_for_bounds(config);
  const auto& r = config.rates;
  const double km = michaelis(r);
  return r.k1 * (km + config.s0) * (km + config.s0) / (r.k2 * km);
}

SlowErrorParams slow_error_params(const ReactionConfig& config, double q) {
  if (!(q > 0.0 && q <= 1.0)) throw InvalidInput("q must lie in (0, 1]");
  const auto eps = epsilon_suite(config);
  const auto dc = derive_constants(config);
  const double km = dc.K_M;
  const double s0 = config.s0;
  const double e = eps.eps_SSl;
  const double cs = c_star(config);
  const double log_inv_eps = -std::log(e);

  SlowErrorParams p;
  p.eps_L = eps.eps_RS * (km + s0) * (dc.K_S + s0) / (km * km);

  const double ds = delta_star(config).value;
  if (ds >= 1.0) throw DomainError("eps_W undefined: delta_star >= 1");
  p.eps_W = std::exp(s0 / km - 1.0) * ds / (1.0 - ds);

  const double cubic = (km + s0) * (km + s0) * (dc.K_S + s0) / (km * km * km);
  const double lambert_factor = std::exp(s0 / km - 1.0) * (km + s0) / km;
  const double log_cs_over_eps = std::log(cs) + log_inv_eps;

  p.eps_dd = e * log_inv_eps;
  p.eps_dag_L = e * (log_cs_over_eps + cubic);
  p.eps_dag_M = e * (log_cs_over_eps + lambert_factor);
  p.eps_S_L = e * (eps.eta + cubic);
  p.eps_S_M = e * (eps.eta + lambert_factor);
  p.Delta_star = e * (log_inv_eps + std::log(cs));
  p.Delta_dstar = e * log_inv_eps;
  p.t_star = t_ssl(config) * log_inv_eps;
  p.depletion_term_q = e / q * std::log1p(cs / (q * e));
  return p;
}

}  // namespace qssa
