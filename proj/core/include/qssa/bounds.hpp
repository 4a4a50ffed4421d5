#pragma once

// Closed-form bounds for the solution started at (s0, 0): distance to the QSS
// manifold, crossing-time brackets, transient substrate depletion and the
// error of the reduced equation. Validity conditions are returned as flags.

#include <functional>

#include "qssa/integrator.hpp"
#include "qssa/params.hpp"

namespace qssa {

// ---------------------------------------------------------------------------
// Distance to the QSS manifold, L = c - g(s).

/// L(t)^2 <= L0^2 e^{-k1 K_M (t-t0)} + coefficient eps^2 eps_MM^2 s0^2 (1 - e^{-k1 K_M (t-t0)}).
/// The default constant is 1/2. Throws InvalidInput for t < t0.
double lyapunov_l2_bound(double t, double t0, double L0, const ReactionConfig& config,
                         double coefficient = 0.5);

/// t_hat = (2/(k1 K_M)) log(1/eps_MM); negative when eps_MM > 1.
double lyapunov_settling_time(const ReactionConfig& config);

/// sqrt(3/2) eps_SSl eps_MM, bound on |L|/s0 for t >= t_hat when eps_MM < 1.
double settled_offset_bound(const ReactionConfig& config);

/// dL/dt = -A L + B before the crossing.
struct LinearLyapunovCoefficients {
  double A = 0.0;
  double B = 0.0;
};

LinearLyapunovCoefficients linear_lyapunov_coefficients(double s, const ReactionConfig& config);

/// Constant majorants on [0, s0] and minorants on [q s0, s0] of A and B.
struct LyapunovRateBounds {
  double A_upper = 0.0;  // k1 (K_M + e0 + s0)
  double B_upper = 0.0;  // k2 (e0 s0/(K_M+s0)) (e0/K_M)
  double A_lower = 0.0;  // k1 (K_M + q s0)
  double B_lower = 0.0;  // k2 (q e0 s0/(K_M+q s0)) (e0 K_M/(K_M+s0)^2)
};

LyapunovRateBounds lyapunov_rate_bounds(const ReactionConfig& config, double q = kDefaultQ);

// ---------------------------------------------------------------------------
// Crossing time.

struct TransientBounds {
  double q = kDefaultQ;
  double eps = 0.0;  // eps_SSl
  double t_SSl = 0.0;
  double lambda = 0.0;  // k1 (K_M + s0)
  double t_ell = 0.0;
  double t_ell_dagger = 0.0;
  double C_q = 0.0;
  double C_star = 0.0;
  double t_u_q = 0.0;
  double t_u_dagger_q = 0.0;
  double t_u_dagger_1 = 0.0;
  /// Upper bound on (t_u_dagger_q - t_u_dagger_1) / t_u_dagger_q.
  double gap_rel = 0.0;
  double t_hat = 0.0;

  // Two-term expansions as eps -> 0.
  double t_ell_dagger_asymptotic = 0.0;
  double t_u_dagger_q_asymptotic = 0.0;
  double t_u_dagger_1_asymptotic = 0.0;
};

/// Requires q in (0, 1].
TransientBounds crossing_time_bounds(const ReactionConfig& config, double q = kDefaultQ);

struct HypothesisReport {
  double q = kDefaultQ;
  double C_star = 0.0;
  double eps = 0.0;
  double cond_q_log_value = 0.0;  // 4 q log(1/q) log(4 C*)
  double threshold_eps = 0.0;     // (9/16) (q log(1/q))^2
  bool cond_q_log = false;
  bool cond_eps_e = false;
  bool cond_eps_q = false;
  bool all_hold = false;
};

/// Conditions under which t_cross <= t_u_dagger(q). Requires q in [1/2, 1).
HypothesisReport check_upper_time_hypotheses(const ReactionConfig& config, double q = kDefaultQ);
HypothesisReport check_upper_time_hypotheses(double C_star, double eps, double q);

/// Onset of slow dynamics t_SSl log(M*/eps) up to higher-order terms.
double onset_time(const ReactionConfig& config, double M_star = 1.0);

// ---------------------------------------------------------------------------
// Substrate depletion (s0 - s_cross)/s0.

struct DepletionBounds {
  double q = kDefaultQ;
  double r = 1.0;
  double lower = 0.0;
  double lower_sharp = 0.0;
  double upper = 0.0;
  double upper_asymptotic = 0.0;  // (1/q)(eps log(1/eps) + eps log(C*/q))
  double Delta_star = 0.0;
  double Delta_dstar = 0.0;
  /// gamma = (1/q) eps log(1 + C*/(q eps)); s(t_u_dagger(q))/s0 >= exp(-gamma).
  double gamma = 0.0;
  double s_at_t_u_dagger_ratio = 0.0;
  /// eps log(k1 K_M/(k2 eps)), compared against 1 and against r.
  double lower_condition_value = 0.0;
  bool lower_valid = false;
  bool lower_sharp_valid = false;
  bool upper_valid = false;
};

/// Requires q in (0, 1) and r in (0, 1]. The upper bound is flagged valid
/// only when the upper-time hypotheses hold (q >= 1/2) and gamma < 1.
DepletionBounds depletion_bounds(const ReactionConfig& config, double q = kDefaultQ,
                                 double r = 1.0);

// ---------------------------------------------------------------------------
// Error of the reduced equation.

struct ErrorBounds {
  /// L(t)^2 bound from t0 = 0, L0 = s0 eps (constant 1/2).
  std::function<double(double)> L2_bound_fn;
  double eqLest_bound = 0.0;  // sqrt(3/2) eps eps_MM
  double t_hat = 0.0;
  double eps_L = 0.0;
  double eps_W = 0.0;
  double eps_opt = 0.0;
  /// |s* - s~| + s0 eps_L and |s* - s~| + s0 eps_W (concentration).
  double total_with_L = 0.0;
  double total_with_W = 0.0;
  /// Normalized bounds for t >= t_u_dagger(q) with s* = s0.
  double corollary_with_L = 0.0;
  double corollary_with_W = 0.0;
  bool corollary_valid = false;
  /// Bounds on (z - s)/s0 for t <= t_cross. t0_bound_a needs a crossing
  /// record and is NaN here; t0_bound_b is NaN when the hypotheses fail.
  double t0_bound_a = 0.0;
  double t0_bound_b = 0.0;
  double t0_asymptotic = 0.0;
};

/// s_star and s_tilde in (0, s0]. Propagates DomainError from delta_star.
ErrorBounds slow_phase_error_bounds(const ReactionConfig& config, double q, double s_star,
                                    double s_tilde);

enum class T0Mode { exact_a, exact_b, running };

/// eps ((s0+K_S)/(s_cross+K_M)) exp(k1 s0 eps t_cross).
double t0_bound_exact_a(const ReactionConfig& config, const CrossingRecord& crossing);

/// eps (1/q) ((s0+K_S)/(s0+K_M)) exp((1/q) k1 s0 t_SSl eps log(1 + C*/(q eps))).
/// Throws InvalidInput unless the upper-time hypotheses hold.
double t0_bound_exact_b(const ReactionConfig& config, double q = kDefaultQ);

/// eps ((K_S+s0)/(K_M+s_cross+eps s0)) (exp(k1 eps s0 t) - exp(-k1 (K_M+s_cross) t)),
/// valid for 0 <= t <= t_cross.
double t0_bound_running(double t, const ReactionConfig& config, const CrossingRecord& crossing);

/// eps_opt / q, the lowest-order term of the exact_b bound.
double t0_bound_asymptotic(const ReactionConfig& config, double q = kDefaultQ);

struct T0Bound {
  T0Mode mode = T0Mode::exact_a;
  double value = 0.0;                     // NaN for running
  std::function<double(double)> running;  // set for running
};

/// Dispatches on mode; exact_a and running need `crossing`.
T0Bound t0_error_bound(const ReactionConfig& config, double q, T0Mode mode,
                       const CrossingRecord* crossing = nullptr);

// ---------------------------------------------------------------------------
// Leading-order behaviour as k1 -> 0, each with its exact counterpart.

struct AsymptoticPair {
  double asymptotic = 0.0;
  double exact = 0.0;
};

struct SmallK1Asymptotics {
  AsymptoticPair eps_SSl;
  AsymptoticPair t_SSl;
  AsymptoticPair t_ell_dagger;
  AsymptoticPair C_star;
  AsymptoticPair t_u_dagger_1;
  /// Depletion estimate against eps log(1 + C*/eps).
  AsymptoticPair depletion;
  /// Listed without a definition; no exact counterpart.
  double eps_inf = 0.0;
  bool eps_inf_undefined_in_text = true;
};

SmallK1Asymptotics small_k1_asymptotics(const ReactionConfig& config);

}  // namespace qssa
