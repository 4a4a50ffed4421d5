#include "qssa/integrator.hpp"

#include <cmath>
#include <string>

namespace qssa {

void validate_options(const IntegrationOptions& options) {
  if (!(options.rel_tol >= 1e-13 && options.rel_tol <= 1e-3)) {
    throw InvalidInput("rel_tol must lie in [1e-13, 1e-3], got " + std::to_string(options.rel_tol));
  }
  if (options.abs_tol && !(*options.abs_tol > 0.0 && std::isfinite(*options.abs_tol))) {
    throw InvalidInput("abs_tol must be positive");
  }
  if (options.event_tol && !(*options.event_tol > 0.0 && std::isfinite(*options.event_tol))) {
    throw InvalidInput("event_tol must be positive");
  }
  if (options.t_end && !std::isfinite(*options.t_end)) {
    throw InvalidInput("t_end must be finite");
  }
  if (options.max_steps == 0) throw InvalidInput("max_steps must be positive");
}

double absolute_tolerance(const IntegrationOptions& options, const ReactionConfig& config) {
  if (options.abs_tol) return *options.abs_tol;
  const double scale = std::max(config.s0, config.e0);
  return scale > 0.0 ? 1e-12 * scale : 1e-12;
}

double auto_horizon(const ReactionConfig& config) {
  const DerivedConstants d = derive_constants(config);
  if (config.e0 <= 0.0) return 1.0;
  return 10.0 * (d.K_M + config.s0) / (config.rates.k2 * config.e0);
}

namespace {

Vec<2> full_field(const Vec<2>& y, const ReactionConfig& config) {
  const Derivative d = full_rhs({y[0], y[1]}, config);
  return {d.ds_dt, d.dc_dt};
}

double offset(const Vec<2>& y, const ReactionConfig& config) {
  return y[1] - qss_manifold(std::max(y[0], 0.0), config);
}

enum class StopRule { horizon, depletion, crossing };

FullTrajectory run_full(const ReactionConfig& config, const IntegrationOptions& options,
                        StopRule rule) {
  validate_for_simulation(config);
  validate_options(options);
  const double t_end = options.t_end.value_or(auto_horizon(config));
  if (!(t_end > 0.0)) throw InvalidInput("t_end must be positive");
  if (options.t_end && rule == StopRule::depletion) rule = StopRule::horizon;

  FullTrajectory traj(0.0, {config.s0, 0.0});
  traj.config = config;
  const Tolerances tol{options.rel_tol, absolute_tolerance(options, config)};
  const double s_floor = 1e-6 * config.s0;

  dopri5<2>([&](double, const Vec<2>& y) { return full_field(y, config); }, 0.0,
            Vec<2>{config.s0, 0.0}, t_end, tol, options.max_steps,
            [&](const DenseSegment<2>& seg) {
              traj.append(seg);
              const Vec<2> y = seg.end();
              switch (rule) {
                case StopRule::depletion: return !(y[0] <= s_floor && config.s0 > 0.0);
                case StopRule::crossing: return !(config.e0 > 0.0 && offset(y, config) >= 0.0);
                case StopRule::horizon: return true;
              }
              return true;
            });
  return traj;
}

ScalarTrajectory run_scalar(double (*field)(double, const ReactionConfig&, double), double param,
                            double s_init, double t_init, double t_end,
                            const ReactionConfig& config, const IntegrationOptions& options) {
  ScalarTrajectory traj(t_init, {s_init});
  traj.config = config;
  const Tolerances tol{options.rel_tol, absolute_tolerance(options, config)};
  dopri5<1>([&](double, const Vec<1>& y) { return Vec<1>{field(y[0], config, param)}; }, t_init,
            Vec<1>{s_init}, t_end, tol, options.max_steps, [&](const DenseSegment<1>& seg) {
              traj.append(seg);
              return true;
            });
  return traj;
}

double reduced_field(double s, const ReactionConfig& config, double) {
  return reduced_rhs(s, config);
}

double scaled_field(double s, const ReactionConfig& config, double delta) {
  return (1.0 - delta) * reduced_rhs(s, config);
}

double corrected_field(double s, const ReactionConfig& config, double corr) {
  return reduced_rhs(s, config) + corr;
}

double scalar_horizon(double t_init, const ReactionConfig& config,
                      const IntegrationOptions& options) {
  const double t_end = options.t_end.value_or(t_init + auto_horizon(config));
  if (!(t_end > t_init)) {
    throw InvalidInput("t_end must exceed the start time " + std::to_string(t_init));
  }
  return t_end;
}

void validate_scalar_start(double s_init, double t_init, const ReactionConfig& config) {
  validate_for_simulation(config);
  if (!(s_init > 0.0 && s_init <= config.s0)) {
    throw InvalidInput("initial substrate must lie in (0, s0], got " + std::to_string(s_init));
  }
  if (!std::isfinite(t_init)) throw InvalidInput("start time must be finite");
}

}  // namespace

FullTrajectory integrate_full(const ReactionConfig& config, const IntegrationOptions& options) {
  return run_full(config, options, StopRule::depletion);
}

FullTrajectory integrate_until_crossing(const ReactionConfig& config,
                                        const IntegrationOptions& options) {
  return run_full(config, options, StopRule::crossing);
}

CrossingRecord locate_crossing(const FullTrajectory& trajectory, const ReactionConfig& config,
                               const IntegrationOptions& options) {
  if (!(config.e0 > 0.0 && config.s0 > 0.0)) {
    throw InvalidInput("crossing requires s0 > 0 and e0 > 0");
  }
  validate_options(options);
  const double atol = absolute_tolerance(options, config);
  const auto states = trajectory.states();
  const auto segments = trajectory.segments();

  // Sign changes of c - g(s), ignoring values within noise of zero.
  int sign_changes = 0;
  int last_sign = -1;
  std::size_t first = segments.size();
  for (std::size_t k = 1; k < states.size(); ++k) {
    const double h = offset(states[k], config);
    const double noise = 10.0 * (atol + options.rel_tol * std::abs(states[k][1]));
    if (first == segments.size() && h >= 0.0) first = k - 1;
    if (std::abs(h) <= noise) continue;
    const int sign = h > 0.0 ? 1 : -1;
    if (sign != last_sign) {
      ++sign_changes;
      last_sign = sign;
    }
  }
  if (first == segments.size()) {
    throw HorizonError("no crossing of the QSS manifold before t=" +
                       std::to_string(trajectory.t_end()) + "; increase t_end");
  }
  if (sign_changes == 0) sign_changes = 1;  // crossing sits inside the noise band

  const DenseSegment<2>& seg = segments[first];
  auto h_at = [&](double t) { return offset(seg(t), config); };
  double a = seg.t0, b = seg.t1();
  double fa = offset(seg.start(), config), fb = offset(seg.end(), config);
  const double tol = options.event_tol.value_or(1e-12 * std::max(1.0, b));

  double root = b;
  if (fb == 0.0) {
    a = b;
  } else {
    // Regula falsi guarded by bisection whenever the bracket fails to halve.
    for (int iter = 0; iter < 200 && b - a > tol; ++iter) {
      const double width = b - a;
      double x = b - fb * (b - a) / (fb - fa);
      if (!(x > a && x < b)) x = 0.5 * (a + b);
      double fx = h_at(x);
      if (fx == 0.0) {
        a = b = x;
        break;
      }
      (fx < 0.0 ? a : b) = x;
      (fx < 0.0 ? fa : fb) = fx;
      if (b - a > 0.5 * width) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        fx = h_at(m);
        if (fx == 0.0) {
          a = b = m;
          break;
        }
        (fx < 0.0 ? a : b) = m;
        (fx < 0.0 ? fa : fb) = fx;
      }
    }
    root = std::abs(fa) < std::abs(fb) ? a : b;
  }

  const Vec<2> y = seg(root);
  CrossingRecord rec;
  rec.t_cross = root;
  rec.s_cross = y[0];
  rec.c_cross = y[1];
  rec.refinement_width = b - a;
  rec.sign_changes = sign_changes;
  return rec;
}

CrossingRecord find_crossing(const ReactionConfig& config, const IntegrationOptions& options) {
  if (!(config.e0 > 0.0 && config.s0 > 0.0)) {
    throw InvalidInput("crossing requires s0 > 0 and e0 > 0");
  }
  const FullTrajectory traj = integrate_until_crossing(config, options);
  CrossingRecord rec = locate_crossing(traj, config, options);
  rec.sign_changes = 1;  // integration stopped at the first change
  return rec;
}

ScalarTrajectory integrate_reduced(double s_init, double t_init, const ReactionConfig& config,
                                   const IntegrationOptions& options) {
  validate_scalar_start(s_init, t_init, config);
  validate_options(options);
  return run_scalar(reduced_field, 0.0, s_init, t_init, scalar_horizon(t_init, config, options),
                    config, options);
}

Envelopes integrate_envelopes(double s_tilde, double t_tilde, const ReactionConfig& config,
                              double delta, const IntegrationOptions& options,
                              EnvelopeCheck check) {
  validate_scalar_start(s_tilde, t_tilde, config);
  validate_options(options);
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw InvalidInput("delta must lie in [0, 1), got " + std::to_string(delta));
  }
  if (check == EnvelopeCheck::require_invariance) {
    validate_for_bounds(config);
    const double ds = delta_star(config).value;
    if (delta < ds * (1.0 - 1e-12)) {
      throw InvalidInput("delta=" + std::to_string(delta) + " is below delta*=" +
                         std::to_string(ds) + "; the enclosing region is not invariant");
    }
  }
  const double t_end = scalar_horizon(t_tilde, config, options);
  Envelopes env;
  env.lower = run_scalar(reduced_field, 0.0, s_tilde, t_tilde, t_end, config, options);
  env.upper_U = run_scalar(corrected_field, envelope_correction(config), s_tilde, t_tilde, t_end,
                           config, options);
  env.upper_delta = run_scalar(scaled_field, delta, s_tilde, t_tilde, t_end, config, options);
  return env;
}

}  // namespace qssa
