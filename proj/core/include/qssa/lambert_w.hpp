#pragma once

// Principal branch of the Lambert W function and the closed-form solution of
// the reduced Michaelis-Menten equation built on it.

#include "qssa/params.hpp"

namespace qssa {

/// W0(x) for x >= 0, residual |w e^w - x| <= 1e-12 max(1, x).
/// Throws DomainError for negative or NaN x.
double lambert_w0(double x);

/// W0(exp(log_x)) without forming exp(log_x); safe for log_x beyond the
/// double range.
double lambert_w0_from_log(double log_x);

/// Dimensionless arguments of the explicit solution from (t_tilde, s_tilde):
/// A = (s_tilde/K_M) exp(s_tilde/K_M), T = k2 e0 (t - t_tilde) / K_M.
struct LambertArgs {
  double log_A = 0.0;  // log A, finite even when A overflows
  double T = 0.0;
};

LambertArgs lambert_args(double s_tilde, double t_tilde, double t, const ReactionConfig& config);

struct SchnellMendoza {
  double s_lower = 0.0;  // K_M W(A e^{-T}), exact reduced solution
  double s_upper = 0.0;  // K_M W(A e^{-T} e^{delta T}), solution with rate scaled by (1 - delta)
};

/// Requires t >= t_tilde, s_tilde in [0, s0] and delta in [0, 1).
SchnellMendoza schnell_mendoza(double s_tilde, double t_tilde, double t,
                               const ReactionConfig& config, double delta);

/// Upper bounds on s_upper - s_lower, with alpha = A e^{-T} and
/// m = e^{delta T} - 1. Pointwise gap <= log_W <= linear_W and
/// gap <= log_A <= linear_A.
struct LambertGapBounds {
  double gap = 0.0;
  double log_W = 0.0;     // K_M log(1 + W(alpha) m)
  double linear_W = 0.0;  // K_M W(alpha) m
  double log_A = 0.0;     // K_M log(1 + alpha m)
  double linear_A = 0.0;  // K_M alpha m
};

LambertGapBounds lambert_gap_bounds(double s_tilde, double t_tilde, double t,
                                    const ReactionConfig& config, double delta);

/// Maximum over T of K_M A e^{-T} (e^{delta T} - 1), attained at
/// T* = -log(1 - delta) / delta with value s_tilde exp(s_tilde/K_M - T*) delta/(1 - delta).
struct GapPeak {
  double T_star = 1.0;
  double value = 0.0;
};

GapPeak lambert_gap_peak(double s_tilde, const ReactionConfig& config, double delta);

}  // namespace qssa
