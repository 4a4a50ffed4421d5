#include "qssa/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qssa/bounds.hpp"
#include "qssa/errors.hpp"
#include "qssa/lambert_w.hpp"
#include "qssa/mass_action.hpp"

namespace qssa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Running minimum of normalized margins.
struct Margin {
  double worst = kInf;
  double t = 0.0;

  void add(double margin, double at) {
    if (margin < worst) {
      worst = margin;
      t = at;
    }
  }
};

CheckResult make(std::string name, Severity severity = Severity::hard) {
  CheckResult r;
  r.name = std::move(name);
  r.severity = severity;
  return r;
}

void finish(CheckResult& r, const Margin& m, double slack) {
  r.slack = slack;
  r.worst_margin = std::isfinite(m.worst) ? m.worst : 0.0;
  r.worst_t = m.t;
  r.passed = r.worst_margin >= -slack;
}

CheckResult vacuous(std::string name, std::string note, Severity severity = Severity::hard) {
  CheckResult r = make(std::move(name), severity);
  r.notes = std::move(note);
  r.skipped = true;
  return r;
}

bool has_dynamics(const ReactionConfig& c) { return c.e0 > 0.0 && c.s0 > 0.0; }

double rel_slack(const VerificationContext& ctx, double scale) {
  return numerical_slack(ctx.options, ctx.config, scale) / scale;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

double numerical_slack(const IntegrationOptions& options, const ReactionConfig& config,
                       double scale) {
  return 10.0 * (options.rel_tol * scale + absolute_tolerance(options, config));
}

VerificationContext prepare_verification(const ReactionConfig& config,
                                         const IntegrationOptions& options) {
  VerificationContext ctx{config, options, integrate_full(config, options), std::nullopt};
  if (has_dynamics(config)) ctx.crossing = locate_crossing(ctx.trajectory, config, options);
  return ctx;
}

CheckResult verify_crossing_lemma(const VerificationContext& ctx) {
  const auto& cfg = ctx.config;
  if (!has_dynamics(cfg)) return vacuous("crossing_lemma", "no dynamics (e0 = 0 or s0 = 0)");
  CheckResult r = make("crossing_lemma");
  const CrossingRecord& x = *ctx.crossing;
  const double scale = std::max(cfg.s0, cfg.e0);
  const double slack = rel_slack(ctx, scale);

  Margin m;
  double prev_t = ctx.trajectory.t_begin();
  Vec<2> prev = ctx.trajectory.front();
  bool first = true;
  ctx.trajectory.for_each_sample(kSamplesPerStep, [&](double t, const Vec<2>& y) {
    m.add((x.c_cross - y[1]) / scale, t);  // c maximal at the crossing
    if (!first) {
      m.add((prev[0] - y[0]) / scale, t);  // s non-increasing
      if (t <= x.t_cross) {
        m.add((y[1] - prev[1]) / scale, t);
      } else if (prev_t >= x.t_cross) {
        m.add((prev[1] - y[1]) / scale, t);
      }
    }
    first = false;
    prev = y;
    prev_t = t;
  });
  finish(r, m, slack);
  r.notes = "sign_changes=" + std::to_string(x.sign_changes) + " t_cross=" + fmt(x.t_cross);
  if (x.sign_changes != 1) {
    r.passed = false;
    r.notes += " (expected exactly one sign change)";
  }
  return r;
}

CheckResult verify_crossing_lemma(const ReactionConfig& config, const IntegrationOptions& options) {
  return verify_crossing_lemma(prepare_verification(config, options));
}

CheckResult verify_bracket(const VerificationContext& ctx, double q) {
  if (!has_dynamics(ctx.config)) return vacuous("bracket", "no dynamics (e0 = 0 or s0 = 0)");
  CheckResult r = make("bracket");
  const TransientBounds tb = crossing_time_bounds(ctx.config, q);
  const double tc = ctx.crossing->t_cross;
  const double slack = rel_slack(ctx, ctx.config.s0);

  Margin m;
  m.add((tc - tb.t_ell) / tc, tb.t_ell);
  m.add((tb.t_ell - tb.t_ell_dagger) / tc, tb.t_ell_dagger);
  const bool upper = q >= 0.5 && q < 1.0 && check_upper_time_hypotheses(ctx.config, q).all_hold;
  if (upper) {
    m.add((tb.t_u_q - tc) / tc, tb.t_u_q);
    m.add((tb.t_u_dagger_q - tb.t_u_q) / tc, tb.t_u_dagger_q);
  }
  finish(r, m, slack);
  r.notes = upper ? "lower and upper sides asserted"
                  : "hypotheses fail; only the lower side asserted";
  r.notes += "; t_u_dagger_1 - t_cross = " + fmt(tb.t_u_dagger_1 - tc);
  return r;
}

CheckResult verify_bracket(const ReactionConfig& config, double q, const IntegrationOptions& options) {
  return verify_bracket(prepare_verification(config, options), q);
}

CheckResult verify_depletion(const VerificationContext& ctx, double q) {
  if (!has_dynamics(ctx.config)) return vacuous("depletion", "no dynamics (e0 = 0 or s0 = 0)");
  const auto& cfg = ctx.config;
  const DepletionBounds db = depletion_bounds(cfg, q);
  const TransientBounds tb = crossing_time_bounds(cfg, q);
  const double measured = (cfg.s0 - ctx.crossing->s_cross) / cfg.s0;
  const double slack = rel_slack(ctx, cfg.s0);

  CheckResult r = make("depletion");
  Margin m;
  std::string notes = "measured=" + fmt(measured);
  if (db.lower_valid) {
    m.add(measured - db.lower, ctx.crossing->t_cross);
    notes += " lower=" + fmt(db.lower);
  }
  if (db.upper_valid) {
    m.add(db.upper - measured, ctx.crossing->t_cross);
    notes += " upper=" + fmt(db.upper);
  }
  if (tb.t_u_dagger_q <= ctx.trajectory.t_end()) {
    const double ratio = ctx.trajectory.at(tb.t_u_dagger_q)[0] / cfg.s0;
    m.add(ratio - db.s_at_t_u_dagger_ratio, tb.t_u_dagger_q);
    if (db.upper_valid) m.add(ratio - q, tb.t_u_dagger_q);
  }
  if (!db.lower_valid && !db.upper_valid) {
    r.skipped = true;
    notes += "; validity conditions fail on both sides";
  }
  finish(r, m, slack);
  r.notes = notes;
  return r;
}

CheckResult verify_depletion(const ReactionConfig& config, double q, const IntegrationOptions& options) {
  return verify_depletion(prepare_verification(config, options), q);
}

std::vector<CheckResult> verify_lyapunov(const VerificationContext& ctx, double coefficient) {
  if (!has_dynamics(ctx.config)) {
    return {vacuous("lyapunov_l2", "no dynamics"), vacuous("lyapunov_settled", "no dynamics")};
  }
  const auto& cfg = ctx.config;
  const EpsilonSuite es = epsilon_suite(cfg);
  const double s0 = cfg.s0;
  const double L0 = s0 * es.eps_SSl;
  const double t_hat = lyapunov_settling_time(cfg);
  const double settled = settled_offset_bound(cfg);

  CheckResult l2 = make("lyapunov_l2");
  CheckResult st = make("lyapunov_settled");
  Margin m2, ms;
  ctx.trajectory.for_each_sample(kSamplesPerStep, [&](double t, const Vec<2>& y) {
    const double L = y[1] - qss_manifold(std::max(y[0], 0.0), cfg);
    m2.add((lyapunov_l2_bound(t, 0.0, L0, cfg, coefficient) - L * L) / (s0 * s0), t);
    if (t >= t_hat) ms.add(settled - std::abs(L) / s0, t);
  });
  // Squared quantities: slack on L^2 is about 2 |L| times the slack on L.
  finish(l2, m2, 2.0 * es.eps_SSl * rel_slack(ctx, s0) + 1e-15);
  l2.notes = "coefficient=" + fmt(coefficient);
  if (es.eps_MM < 1.0) {
    finish(st, ms, rel_slack(ctx, s0));
    st.notes = "t_hat=" + fmt(t_hat);
  } else {
    st.skipped = true;
    st.notes = "eps_MM >= 1";
  }
  return {l2, st};
}

std::vector<CheckResult> verify_slow_error(const VerificationContext& ctx, SlowScenario scenario,
                                           double q) {
  const char* tag = scenario == SlowScenario::on_manifold ? "slow_error" : "t0_error";
  if (!has_dynamics(ctx.config)) {
    return {vacuous(std::string(tag), "no dynamics")};
  }
  const auto& cfg = ctx.config;
  const EpsilonSuite es = epsilon_suite(cfg);
  const CrossingRecord& x = *ctx.crossing;
  const double s0 = cfg.s0;
  const double slack = rel_slack(ctx, s0);
  std::vector<CheckResult> out;

  if (scenario == SlowScenario::on_manifold) {
    const SlowErrorParams p = slow_error_params(cfg, std::min(q, 1.0));
    Margin mL, mW, mO;
    double worst_err = 0.0;
    ctx.trajectory.for_each_sample(kSamplesPerStep, [&](double t, const Vec<2>& y) {
      if (t < x.t_cross) return;
      const double xi = schnell_mendoza(x.s_cross, x.t_cross, t, cfg, 0.0).s_lower;
      const double err = std::abs(xi - y[0]) / s0;
      worst_err = std::max(worst_err, err);
      mL.add(p.eps_L - err, t);
      mW.add(p.eps_W - err, t);
      mO.add(es.eps_opt - err, t);
    });
    CheckResult rL = make("slow_error_eps_L");
    finish(rL, mL, slack);
    rL.notes = "eps_L=" + fmt(p.eps_L) + " max_err=" + fmt(worst_err);
    CheckResult rW = make("slow_error_eps_W");
    finish(rW, mW, slack);
    rW.notes = "eps_W=" + fmt(p.eps_W) + " max_err=" + fmt(worst_err);
    CheckResult rO = make("slow_error_eps_opt", Severity::soft);
    finish(rO, mO, slack);
    rO.notes = "eps_opt=" + fmt(es.eps_opt) + " (conjectured bound)";
    out = {rL, rW, rO};
  } else {
    const double exact_a = t0_bound_exact_a(cfg, x);
    const bool hyp = q >= 0.5 && q < 1.0 && check_upper_time_hypotheses(cfg, q).all_hold;
    const double exact_b = hyp ? t0_bound_exact_b(cfg, q) : 0.0;
    Margin mOrder, mRun, mA, mB, mO;
    double worst_err = 0.0;
    ctx.trajectory.for_each_sample(kSamplesPerStep, [&](double t, const Vec<2>& y) {
      const double z = schnell_mendoza(s0, 0.0, t, cfg, 0.0).s_lower;
      const double err = (z - y[0]) / s0;
      worst_err = std::max(worst_err, std::abs(err));
      mO.add(es.eps_opt - std::abs(err), t);
      if (t > x.t_cross) return;
      mOrder.add(err, t);
      mRun.add(t0_bound_running(t, cfg, x) - err, t);
      mA.add(exact_a - err, t);
      if (hyp) mB.add(exact_b - err, t);
    });
    CheckResult rOrder = make("t0_error_ordering");
    finish(rOrder, mOrder, slack);
    rOrder.notes = "z >= s up to t_cross";
    CheckResult rRun = make("t0_error_running");
    finish(rRun, mRun, slack);
    CheckResult rA = make("t0_error_exact_a");
    finish(rA, mA, slack);
    rA.notes = "bound=" + fmt(exact_a);
    CheckResult rB = make("t0_error_exact_b");
    if (hyp) {
      finish(rB, mB, slack);
      rB.notes = "bound=" + fmt(exact_b);
    } else {
      rB.skipped = true;
      rB.notes = "upper-time hypotheses fail";
    }
    CheckResult rO = make("t0_error_eps_opt", Severity::soft);
    finish(rO, mO, slack);
    rO.notes = "eps_opt=" + fmt(es.eps_opt) + " max_err=" + fmt(worst_err) + " (conjectured bound)";
    out = {rOrder, rRun, rA, rB, rO};
  }
  return out;
}

std::vector<CheckResult> verify_slow_error(const ReactionConfig& config, SlowScenario scenario,
                                           const IntegrationOptions& options) {
  return verify_slow_error(prepare_verification(config, options), scenario);
}

CheckResult verify_invariant_region(const VerificationContext& ctx, double delta) {
  if (delta == 0.0) {
    return vacuous("invariant_region", "delta = 0: region degenerates to the graph of g");
  }
  if (!(delta > 0.0 && delta <= 1.0)) throw InvalidInput("delta must lie in [0, 1]");
  const auto& cfg = ctx.config;
  if (!has_dynamics(cfg)) return vacuous("invariant_region", "no dynamics");
  const double ds = delta_star(cfg).value;
  if (delta < ds * (1.0 - 1e-12)) {
    throw InvalidInput("delta=" + fmt(delta) + " below delta*=" + fmt(ds));
  }
  CheckResult r = make("invariant_region");
  const double scale = std::max(cfg.s0, cfg.e0);
  Margin m;
  bool inside = false;
  double entered = 0.0;
  ctx.trajectory.for_each_sample(kSamplesPerStep, [&](double t, const Vec<2>& y) {
    const double s = std::max(y[0], 0.0);
    const double lo = y[1] - qss_manifold(s, cfg);
    const double hi = qss_manifold(s, cfg, delta) - y[1];
    if (!inside && lo >= 0.0 && hi >= 0.0) {
      inside = true;
      entered = t;
    }
    if (inside) m.add(std::min(lo, hi) / scale, t);
  });
  finish(r, m, rel_slack(ctx, scale));
  r.notes = inside ? "entered at t=" + fmt(entered) : "region never entered";
  if (!inside) r.skipped = true;
  return r;
}

CheckResult verify_invariant_region(const ReactionConfig& config, double delta,
                                    const IntegrationOptions& options) {
  return verify_invariant_region(prepare_verification(config, options), delta);
}

CheckResult verify_simple_envelopes(const VerificationContext& ctx) {
  const auto& cfg = ctx.config;
  if (!has_dynamics(cfg)) return vacuous("simple_envelopes", "no dynamics");
  const auto& k = cfg.rates;
  const double km = derive_constants(cfg).K_M;
  const double s0 = cfg.s0;
  const double wr = k.k_m1 / (k.k_m1 + k.k2);
  CheckResult r = make("simple_envelopes");
  Margin m;
  ctx.trajectory.for_each_sample(kSamplesPerStep, [&](double t, const Vec<2>& y) {
    const double lower = s0 * std::exp(-k.k1 * cfg.e0 * t);
    const double upper =
        s0 * (wr + (1.0 - wr) * std::exp(-k.k1 * cfg.e0 * km / (km + s0) * t));
    m.add((y[0] - lower) / s0, t);
    m.add((upper - y[0]) / s0, t);
  });
  finish(r, m, rel_slack(ctx, s0));
  return r;
}

std::vector<CheckResult> verify_all(const ReactionConfig& config, double q,
                                    const IntegrationOptions& options) {
  const VerificationContext ctx = prepare_verification(config, options);
  std::vector<CheckResult> out;
  out.push_back(verify_crossing_lemma(ctx));
  if (!has_dynamics(config)) return out;
  out.push_back(verify_simple_envelopes(ctx));
  out.push_back(verify_bracket(ctx, q));
  out.push_back(verify_depletion(ctx, q));
  for (auto& c : verify_lyapunov(ctx)) out.push_back(std::move(c));
  try {
    const double ds = delta_star(config).value;
    out.push_back(verify_invariant_region(ctx, ds));
  } catch (const DomainError& e) {
    out.push_back(vacuous("invariant_region", e.what()));
  }
  try {
    for (auto& c : verify_slow_error(ctx, SlowScenario::on_manifold, q)) out.push_back(std::move(c));
  } catch (const DomainError& e) {
    out.push_back(vacuous("slow_error", e.what()));
  }
  for (auto& c : verify_slow_error(ctx, SlowScenario::from_t0, q)) out.push_back(std::move(c));
  return out;
}

bool all_hard_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) {
    return r.severity == Severity::soft || r.skipped || r.passed;
  });
}

}  // namespace qssa
