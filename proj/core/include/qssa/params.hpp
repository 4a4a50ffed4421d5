#pragma once

// Kinetic inputs of the Michaelis-Menten mechanism S + E <-> C -> E + P and
// every closed-form constant or dimensionless parameter derived from them.
// Units are arbitrary but must be consistent.

namespace qssa {

struct RateConstants {
  double k1 = 1.0;    // binding, concentration^-1 time^-1
  double k_m1 = 0.0;  // unbinding, time^-1
  double k2 = 1.0;    // catalysis, time^-1
};

struct ReactionConfig {
  RateConstants rates;
  double s0 = 0.0;  // initial substrate
  double e0 = 0.0;  // total enzyme
};

/// Default auxiliary constant q for the upper crossing-time estimates.
inline constexpr double kDefaultQ = 0.97;

/// Throws InvalidInput unless k1 > 0, k_m1 >= 0, k2 > 0 (all finite).
void validate_rates(const RateConstants& rates);

/// Simulator contract: valid rates and s0, e0 >= 0.
void validate_for_simulation(const ReactionConfig& config);

/// Bound contract: valid rates and s0, e0 > 0.
void validate_for_bounds(const ReactionConfig& config);

struct DerivedConstants {
  double K_M = 0.0;        // Michaelis constant (k_m1 + k2) / k1
  double K_S = 0.0;        // dissociation constant k_m1 / k1
  double K = 0.0;          // Van Slyke-Cullen constant k2 / k1
  double v_inf = 0.0;      // limiting rate k2 e0
  double sigma = 0.0;      // s0 / K_M
  double Theta = 0.0;      // specificity constant k2 / K_M
  double Theta_bar = 0.0;  // Theta / k1, in (0, 1]
};

DerivedConstants derive_constants(const ReactionConfig& config);

struct EpsilonSuite {
  double eps_BH = 0.0;   // e0 / s0
  double eps_RS = 0.0;   // e0 / K_M
  double eps_SSl = 0.0;  // e0 / (K_M + s0)
  double eps_MM = 0.0;   // eps_RS k2 / (k_m1 + k2)
  double eps_opt = 0.0;  // eta eps_SSl
  double eta = 0.0;      // (K_S + s0) / (K_M + s0)
};

/// All six parameters from one evaluation of K_M. Requires s0, e0 > 0.
EpsilonSuite epsilon_suite(const ReactionConfig& config);

struct DeltaStar {
  double value = 0.0;
  /// (10/9) e0 / (K_M + e0), the intermediate form of the simple estimate.
  double intermediate_bound = 0.0;
  /// (10/9) eps_RS.
  double simple_bound = 0.0;
  /// True iff eps_RS <= 0.1, the regime where simple_bound is proven.
  bool simple_bound_valid = false;
};

/// Smallest delta for which the region between g_0 and g_delta is
/// positively invariant. Throws DomainError when the discriminant
/// 1 - 4 k2 e0 / (k1 (K_M + e0)^2) is negative beyond rounding.
DeltaStar delta_star(const ReactionConfig& config);

/// Segel-Slemrod fast timescale 1 / (k1 (K_M + s0)).
double t_ssl(const ReactionConfig& config);

/// C* = k1 (K_M + s0)^2 / (k2 K_M).
double c_star(const ReactionConfig& config);

struct SlowErrorParams {
  double eps_L = 0.0;
  double eps_W = 0.0;
  double eps_dd = 0.0;     // eps_SSl log(1/eps_SSl)
  double eps_dag_L = 0.0;
  double eps_dag_M = 0.0;
  double eps_S_L = 0.0;
  double eps_S_M = 0.0;
  double Delta_star = 0.0;   // eps (log(1/eps) + log C*)
  double Delta_dstar = 0.0;  // eps log(1/eps)
  double t_star = 0.0;       // t_SSl log(1/eps)
  /// (1/q) eps log(1 + C*/(q eps)), the depletion term of the total-error
  /// estimate started at t_u^dagger(q).
  double depletion_term_q = 0.0;
};

/// Slow-phase error parameters. Propagates the DomainError of delta_star
/// (eps_W needs it) and rejects q outside (0, 1].
SlowErrorParams slow_error_params(const ReactionConfig& config, double q = kDefaultQ);

}  // namespace qssa
