#include "qssa/lambert_w.hpp"

#include <cmath>
#include <string>

#include "qssa/errors.hpp"

namespace qssa {

namespace {

constexpr double kE = 2.718281828459045235;

double halley(double x, double w) {
  for (int i = 0; i < 64; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (f == 0.0) break;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 1e-14 * (1.0 + std::abs(w))) break;
  }
  return w;
}

void check_delta(double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw InvalidInput("delta must lie in [0, 1), got " + std::to_string(delta));
  }
}

}  // namespace

double lambert_w0(double x) {
  if (!(x >= 0.0)) throw DomainError("lambert_w0: argument must be non-negative");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  double w;
  if (x < 1.0) {
    w = x * (1.0 - x * (1.0 - 1.5 * x));
    if (x > 0.3) w = 0.567143290409783873 * x;  // chord through (0,0) and (1, W(1))
  } else if (x < kE) {
    w = 0.567143290409783873 + (x - 1.0) * (1.0 - 0.567143290409783873) / (kE - 1.0);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  return halley(x, w);
}

double lambert_w0_from_log(double log_x) {
  if (std::isnan(log_x)) throw DomainError("lambert_w0_from_log: NaN argument");
  if (log_x <= 700.0) return lambert_w0(std::exp(log_x));
  // w + log w = log_x by Newton's method.
  double w = log_x - std::log(log_x);
  for (int i = 0; i < 64; ++i) {
    const double step = (w + std::log(w) - log_x) / (1.0 + 1.0 / w);
    w -= step;
    if (std::abs(step) <= 1e-15 * w) break;
  }
  return w;
}

LambertArgs lambert_args(double s_tilde, double t_tilde, double t, const ReactionConfig& config) {
  validate_for_simulation(config);
  if (!(t >= t_tilde)) throw InvalidInput("t must not precede t_tilde");
  if (!(s_tilde >= 0.0)) throw InvalidInput("s_tilde must be non-negative");
  const double K_M = derive_constants(config).K_M;
  const double u = s_tilde / K_M;
  LambertArgs a;
  a.log_A = s_tilde > 0.0 ? std::log(u) + u : -INFINITY;
  a.T = config.rates.k2 * config.e0 * (t - t_tilde) / K_M;
  return a;
}

SchnellMendoza schnell_mendoza(double s_tilde, double t_tilde, double t,
                               const ReactionConfig& config, double delta) {
  check_delta(delta);
  const LambertArgs a = lambert_args(s_tilde, t_tilde, t, config);
  const double K_M = derive_constants(config).K_M;
  SchnellMendoza out;
  if (s_tilde == 0.0) return out;
  if (a.T == 0.0) {
    out.s_lower = out.s_upper = s_tilde;
    return out;
  }
  out.s_lower = K_M * lambert_w0_from_log(a.log_A - a.T);
  out.s_upper = delta == 0.0 ? out.s_lower
                             : K_M * lambert_w0_from_log(a.log_A - a.T + delta * a.T);
  return out;
}

LambertGapBounds lambert_gap_bounds(double s_tilde, double t_tilde, double t,
                                    const ReactionConfig& config, double delta) {
  const SchnellMendoza sm = schnell_mendoza(s_tilde, t_tilde, t, config, delta);
  LambertGapBounds b;
  b.gap = sm.s_upper - sm.s_lower;
  const LambertArgs a = lambert_args(s_tilde, t_tilde, t, config);
  if (delta == 0.0 || a.T == 0.0 || s_tilde == 0.0) return b;
  const double K_M = derive_constants(config).K_M;
  const double m = std::expm1(delta * a.T);
  const double w = sm.s_lower / K_M;
  const double alpha = std::exp(a.log_A - a.T);
  b.log_W = K_M * std::log1p(w * m);
  b.linear_W = K_M * w * m;
  b.log_A = K_M * std::log1p(alpha * m);
  b.linear_A = K_M * alpha * m;
  return b;
}

GapPeak lambert_gap_peak(double s_tilde, const ReactionConfig& config, double delta) {
  check_delta(delta);
  validate_for_simulation(config);
  const double K_M = derive_constants(config).K_M;
  GapPeak p;
  if (delta == 0.0) return p;
  p.T_star = -std::log1p(-delta) / delta;
  p.value = s_tilde * std::exp(s_tilde / K_M - p.T_star) * delta / (1.0 - delta);
  return p;
}

}  // namespace qssa
