#pragma once

// Numerical certification of the analytic bounds against integrated
// trajectories. Every inequality is checked at all accepted steps plus
// dense samples in between, with a slack tied to the integration tolerances.

#include <optional>
#include <string>
#include <vector>

#include "qssa/integrator.hpp"
#include "qssa/params.hpp"

namespace qssa {

enum class Severity { hard, soft };

struct CheckResult {
  std::string name;
  bool passed = true;
  /// Minimum over samples of (bound - quantity), normalized by the check's scale.
  double worst_margin = 0.0;
  double worst_t = 0.0;
  /// Normalized slack the margin was compared against.
  double slack = 0.0;
  std::string notes;
  Severity severity = Severity::hard;
  bool skipped = false;
};

inline constexpr std::size_t kSamplesPerStep = 8;

/// 10 (rel_tol scale + abs_tol), the absolute slack for quantities of size `scale`.
double numerical_slack(const IntegrationOptions& options, const ReactionConfig& config,
                       double scale);

/// One integration shared by all checks on a configuration.
struct VerificationContext {
  ReactionConfig config;
  IntegrationOptions options;
  FullTrajectory trajectory;
  std::optional<CrossingRecord> crossing;  // empty when e0 or s0 is zero
};

/// Integrates the full system and locates the crossing.
VerificationContext prepare_verification(const ReactionConfig& config,
                                         const IntegrationOptions& options = {});

/// Unique crossing, c maximal there, c rising then falling, s decreasing.
CheckResult verify_crossing_lemma(const VerificationContext& ctx);
CheckResult verify_crossing_lemma(const ReactionConfig& config,
                                  const IntegrationOptions& options = {});

/// t_ell_dagger <= t_ell <= t_cross always; t_cross <= t_u(q) <= t_u_dagger(q)
/// when the upper-time hypotheses hold.
CheckResult verify_bracket(const VerificationContext& ctx, double q = kDefaultQ);
CheckResult verify_bracket(const ReactionConfig& config, double q,
                           const IntegrationOptions& options = {});

/// Measured depletion inside the valid sides of depletion_bounds, and
/// s(t_u_dagger(q)) >= q s0 under the hypotheses. Skipped when no side is valid.
CheckResult verify_depletion(const VerificationContext& ctx, double q = kDefaultQ);
CheckResult verify_depletion(const ReactionConfig& config, double q,
                             const IntegrationOptions& options = {});

/// Two results: the L^2 decay bound from t = 0 with the given coefficient
/// (default 1/2), and |L|/s0 <= sqrt(3/2) eps eps_MM after t_hat
/// (skipped unless eps_MM < 1).
std::vector<CheckResult> verify_lyapunov(const VerificationContext& ctx, double coefficient = 0.5);

enum class SlowScenario { on_manifold, from_t0 };

/// on_manifold: xi started at (t_cross, s(t_cross)); hard checks against
/// eps_L and eps_W, soft check against eps_opt.
/// from_t0: z started at (0, s0); hard checks z >= s, the running bound and
/// the exact bounds up to t_cross, soft check against eps_opt over the full run.
std::vector<CheckResult> verify_slow_error(const VerificationContext& ctx, SlowScenario scenario,
                                           double q = kDefaultQ);
std::vector<CheckResult> verify_slow_error(const ReactionConfig& config, SlowScenario scenario,
                                           const IntegrationOptions& options = {});

/// Once a sample lies between g_0 and g_delta, all later samples stay there.
/// delta = 0 passes vacuously; 0 < delta < delta_star throws InvalidInput.
CheckResult verify_invariant_region(const VerificationContext& ctx, double delta);
CheckResult verify_invariant_region(const ReactionConfig& config, double delta,
                                    const IntegrationOptions& options = {});

/// Simple substrate envelopes s0 e^{-k1 e0 t} <= s(t) <= two-exponential bound.
CheckResult verify_simple_envelopes(const VerificationContext& ctx);

/// All checks on one configuration, in a fixed order.
std::vector<CheckResult> verify_all(const ReactionConfig& config, double q = kDefaultQ,
                                    const IntegrationOptions& options = {});

/// True iff every hard, non-skipped check passed.
bool all_hard_passed(const std::vector<CheckResult>& results);

}  // namespace qssa
