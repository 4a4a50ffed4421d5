#include "qssa/mass_action.hpp"

#include <cmath>
#include <numbers>

#include "qssa/errors.hpp"

namespace qssa {

Derivative full_rhs(State x, const ReactionConfig& config) {
  const auto& r = config.rates;
  const double bind = r.k1 * config.e0 * x.s;
  return {-bind + (r.k1 * x.s + r.k_m1) * x.c,
          bind - (r.k1 * x.s + r.k_m1 + r.k2) * x.c};
}

Derivative full_rhs_rewritten(State x, const ReactionConfig& config) {
  const auto& r = config.rates;
  const double g = qss_manifold(x.s, config);
  return {-r.k1 * config.e0 * x.s + (r.k_m1 + r.k1 * x.s) * x.c,
          -(r.k_m1 + r.k2 + r.k1 * x.s) * (x.c - g)};
}

double qss_manifold(double s, const ReactionConfig& config, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidInput("delta must lie in [0, 1]");
  if (!(s >= 0.0)) throw InvalidInput("s must be non-negative");
  if (s == 0.0) return 0.0;
  const auto& r = config.rates;
  return r.k1 * config.e0 * s / ((1.0 - delta) * r.k2 + r.k_m1 + r.k1 * s);
}

double qss_manifold_slope(double s, const ReactionConfig& config) {
  const auto& r = config.rates;
  const double km = (r.k_m1 + r.k2) / r.k1;
  return km * config.e0 / ((km + s) * (km + s));
}

double first_order_manifold(double s, const ReactionConfig& config) {
  const auto& r = config.rates;
  return r.k1 * config.e0 * s / (r.k_m1 + r.k2);
}

double reduced_rhs(double s, const ReactionConfig& config) {
  const auto& r = config.rates;
  const double km = (r.k_m1 + r.k2) / r.k1;
  return -r.k2 * config.e0 * s / (km + s);
}

double product(State x, const ReactionConfig& config) { return config.s0 - x.s - x.c; }

double free_enzyme(State x, const ReactionConfig& config) { return config.e0 - x.c; }

double envelope_correction(const ReactionConfig& config) {
  const auto& r = config.rates;
  const double s0 = config.s0;
  const double e0 = config.e0;
  const double sum = r.k_m1 + r.k2;
  return std::numbers::sqrt2 / 2.0 * r.k1 * e0 * s0 * ((r.k_m1 + r.k1 * s0) / (sum + r.k1 * s0)) *
         (r.k1 * r.k2 * e0 / (sum * sum));
}

EnvelopeRates envelope_rates(double s, const ReactionConfig& config) {
  const double corr = envelope_correction(config);
  const double mm = reduced_rhs(s, config);
  return {mm + corr, -mm + corr};
}

}  // namespace qssa
