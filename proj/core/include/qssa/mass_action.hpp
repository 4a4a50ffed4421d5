#pragma once

#include "qssa/params.hpp"

namespace qssa {

/// Planar state (s, c). Product and free enzyme are derived:
/// p = s0 - s - c, e = e0 - c.
struct State {
  double s = 0.0;
  double c = 0.0;
};

struct Derivative {
  double ds_dt = 0.0;
  double dc_dt = 0.0;
};

/// Mass-action right-hand side
///   ds/dt = -k1 e0 s + (k1 s + k_m1) c
///   dc/dt =  k1 e0 s - (k1 s + k_m1 + k2) c
Derivative full_rhs(State x, const ReactionConfig& config);

/// Same vector field written through L = c - g(s):
///   dc/dt = -(k_m1 + k2 + k1 s) (c - g(s)).
Derivative full_rhs_rewritten(State x, const ReactionConfig& config);

/// Isocline family g_delta(s) = k1 e0 s / ((1-delta) k2 + k_m1 + k1 s).
/// delta = 0 is the QSS manifold (c-nullcline), delta = 1 the s-nullcline.
double qss_manifold(double s, const ReactionConfig& config, double delta = 0.0);

/// g'(s) = K_M e0 / (K_M + s)^2.
double qss_manifold_slope(double s, const ReactionConfig& config);

/// First-order slow manifold for small k1: k1 e0 s / (k_m1 + k2).
double first_order_manifold(double s, const ReactionConfig& config);

/// Michaelis-Menten rate -v_inf s / (K_M + s).
double reduced_rhs(double s, const ReactionConfig& config);

/// Signed distance to the QSS manifold, c - g(s).
inline double manifold_offset(State x, const ReactionConfig& config) {
  return x.c - qss_manifold(x.s, config);
}

double product(State x, const ReactionConfig& config);
double free_enzyme(State x, const ReactionConfig& config);

struct EnvelopeRates {
  double U = 0.0;        // upper rate for substrate after the crossing
  double U_tilde = 0.0;  // upper rate for product formation
};

/// s-independent correction of the enclosure rates:
/// (1/sqrt2) k1 e0 s0 ((k_m1 + k1 s0)/(k_m1 + k2 + k1 s0)) (k1 k2 e0/(k_m1 + k2)^2).
double envelope_correction(const ReactionConfig& config);

EnvelopeRates envelope_rates(double s, const ReactionConfig& config);

}  // namespace qssa
