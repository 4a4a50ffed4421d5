#pragma once

// Adaptive Dormand-Prince 5(4) integration with continuous (quartic) dense
// output, plus the drivers for the full mass-action system, the reduced
// Michaelis-Menten equation and the slow-phase enclosure equations.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qssa/errors.hpp"
#include "qssa/mass_action.hpp"
#include "qssa/params.hpp"

namespace qssa {

struct IntegrationOptions {
  double rel_tol = 1e-10;
  /// Absolute tolerance; unset selects 1e-12 * max(s0, e0).
  std::optional<double> abs_tol;
  /// Absolute end time; unset selects the automatic horizon.
  std::optional<double> t_end;
  std::size_t max_steps = 50'000'000;
  /// Crossing refinement width; unset selects 1e-12 * max(1, t_cross).
  std::optional<double> event_tol;
};

/// Throws InvalidInput unless rel_tol in [1e-13, 1e-3], abs_tol > 0,
/// event_tol > 0 and max_steps > 0.
void validate_options(const IntegrationOptions& options);

/// Resolved absolute tolerance for a configuration.
double absolute_tolerance(const IntegrationOptions& options, const ReactionConfig& config);

/// Ten slow depletion timescales, 10 (K_M + s0) / (k2 e0).
double auto_horizon(const ReactionConfig& config);

template <std::size_t N>
using Vec = std::array<double, N>;

/// One accepted step with its continuous extension.
template <std::size_t N>
struct DenseSegment {
  double t0 = 0.0;
  double h = 0.0;
  std::array<Vec<N>, 5> coeff{};

  double t1() const { return t0 + h; }
  Vec<N> start() const { return coeff[0]; }
  Vec<N> end() const {
    Vec<N> y;
    for (std::size_t i = 0; i < N; ++i) y[i] = coeff[0][i] + coeff[1][i];
    return y;
  }
  Vec<N> operator()(double t) const {
    const double th = h == 0.0 ? 0.0 : (t - t0) / h;
    const double th1 = 1.0 - th;
    Vec<N> y;
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = coeff[0][i] +
             th * (coeff[1][i] + th1 * (coeff[2][i] + th * (coeff[3][i] + th1 * coeff[4][i])));
    }
    return y;
  }
};

/// Time series from an integration: node values at every accepted step and
/// the dense interpolant between them. Immutable once returned.
template <std::size_t N>
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(double t0, const Vec<N>& y0) : times_{t0}, states_{y0} {}

  void append(const DenseSegment<N>& seg) {
    segments_.push_back(seg);
    times_.push_back(seg.t1());
    states_.push_back(seg.end());
  }

  std::span<const double> times() const { return times_; }
  std::span<const Vec<N>> states() const { return states_; }
  std::span<const DenseSegment<N>> segments() const { return segments_; }
  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  double t_begin() const { return times_.front(); }
  double t_end() const { return times_.back(); }
  const Vec<N>& front() const { return states_.front(); }
  const Vec<N>& back() const { return states_.back(); }

  /// Dense value at t in [t_begin, t_end].
  Vec<N> at(double t) const {
    if (empty() || t < t_begin() || t > t_end()) {
      throw InvalidInput("Trajectory::at: t=" + std::to_string(t) + " outside the covered range");
    }
    if (segments_.empty()) return states_.front();
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t idx = static_cast<std::size_t>(it - times_.begin());
    idx = idx == 0 ? 0 : idx - 1;
    if (idx >= segments_.size()) return states_.back();
    return segments_[idx](t);
  }

  /// Calls f(t, y) at every node plus `per_step` interior dense samples per
  /// step, in increasing time order.
  template <class F>
  void for_each_sample(std::size_t per_step, F&& f) const {
    if (empty()) return;
    f(times_.front(), states_.front());
    for (std::size_t k = 0; k < segments_.size(); ++k) {
      const auto& seg = segments_[k];
      for (std::size_t j = 1; j <= per_step; ++j) {
        const double t = seg.t0 + seg.h * static_cast<double>(j) / static_cast<double>(per_step + 1);
        f(t, seg(t));
      }
      f(times_[k + 1], states_[k + 1]);
    }
  }

  ReactionConfig config{};

 private:
  std::vector<double> times_;
  std::vector<Vec<N>> states_;
  std::vector<DenseSegment<N>> segments_;
};

using FullTrajectory = Trajectory<2>;
using ScalarTrajectory = Trajectory<1>;

inline State to_state(const Vec<2>& y) { return {y[0], y[1]}; }

struct Tolerances {
  double rel = 1e-10;
  double abs = 1e-12;
};

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
};

namespace detail {

// Dormand-Prince 5(4) tableau with Hairer's dense-output coefficients.
struct Dp5 {
  static constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
  static constexpr double a21 = 0.2;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                          a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                          a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                          e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  static constexpr double d1 = -12715105075.0 / 11282082432.0,
                          d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0,
                          d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
};

template <std::size_t N>
double scaled_norm(const Vec<N>& v, const Vec<N>& y0, const Vec<N>& y1, const Tolerances& tol) {
  double sum = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double sk = tol.abs + tol.rel * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = v[i] / sk;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(N));
}

}  // namespace detail

/// Integrates y' = rhs(t, y) from t0 to t_end. Every accepted step is passed
/// to `on_step(const DenseSegment<N>&)`, which returns false to stop early.
/// Throws StiffnessError on step-size underflow and ResourceError once
/// `max_steps` accepted plus rejected steps are used.
template <std::size_t N, class Rhs, class OnStep>
IntegrationStats dopri5(Rhs&& rhs, double t0, Vec<N> y, double t_end, const Tolerances& tol,
                        std::size_t max_steps, OnStep&& on_step) {
  using T = detail::Dp5;
  IntegrationStats stats;
  if (!(t_end > t0)) return stats;

  constexpr double uround = std::numeric_limits<double>::epsilon();
  constexpr double safe = 0.9, beta = 0.04, facc1 = 5.0, facc2 = 0.1;
  const double expo1 = 0.2 - beta * 0.75;
  const double hmax = t_end - t0;

  auto axpy = [](const Vec<N>& base, double h, std::initializer_list<std::pair<double, const Vec<N>*>> terms) {
    Vec<N> out = base;
    for (const auto& [coef, k] : terms) {
      for (std::size_t i = 0; i < N; ++i) out[i] += h * coef * (*k)[i];
    }
    return out;
  };
  auto eval = [&](double t, const Vec<N>& x) {
    ++stats.rhs_evals;
    return rhs(t, x);
  };

  double t = t0;
  Vec<N> k1 = eval(t, y);

  // Initial step (Hairer & Wanner, HINIT).
  double h;
  {
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = tol.abs + tol.rel * std::abs(y[i]);
      dnf += (k1[i] / sk) * (k1[i] / sk);
      dny += (y[i] / sk) * (y[i] / sk);
    }
    h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
    h = std::min(h, hmax);
    const Vec<N> y1 = axpy(y, h, {{1.0, &k1}});
    const Vec<N> f1 = eval(t + h, y1);
    double der2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = tol.abs + tol.rel * std::abs(y[i]);
      der2 += ((f1[i] - k1[i]) / sk) * ((f1[i] - k1[i]) / sk);
    }
    der2 = std::sqrt(der2) / h;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
    h = std::min({100.0 * h, h1, hmax});
  }

  double facold = 1e-4;
  bool reject = false;
  bool last = false;
  std::size_t nstep = 0;

  while (true) {
    if (nstep++ >= max_steps) {
      throw ResourceError("dopri5: step budget of " + std::to_string(max_steps) +
                          " exhausted at t=" + std::to_string(t));
    }
    if (0.1 * std::abs(h) <= std::abs(t) * uround || !(h > 0.0)) {
      throw StiffnessError("dopri5: step size underflow (h=" + std::to_string(h) +
                           ") at t=" + std::to_string(t));
    }
    if (t + 1.01 * h >= t_end) {
      h = t_end - t;
      last = true;
    }

    const Vec<N> k2 = eval(t + T::c2 * h, axpy(y, h, {{T::a21, &k1}}));
    const Vec<N> k3 = eval(t + T::c3 * h, axpy(y, h, {{T::a31, &k1}, {T::a32, &k2}}));
    const Vec<N> k4 =
        eval(t + T::c4 * h, axpy(y, h, {{T::a41, &k1}, {T::a42, &k2}, {T::a43, &k3}}));
    const Vec<N> k5 = eval(t + T::c5 * h,
                           axpy(y, h, {{T::a51, &k1}, {T::a52, &k2}, {T::a53, &k3}, {T::a54, &k4}}));
    const Vec<N> k6 = eval(
        t + h, axpy(y, h, {{T::a61, &k1}, {T::a62, &k2}, {T::a63, &k3}, {T::a64, &k4}, {T::a65, &k5}}));
    const Vec<N> y1 = axpy(y, h, {{T::a71, &k1}, {T::a73, &k3}, {T::a74, &k4}, {T::a75, &k5}, {T::a76, &k6}});
    const Vec<N> k7 = eval(t + h, y1);

    Vec<N> errv;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      errv[i] = h * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] + T::e5 * k5[i] + T::e6 * k6[i] +
                     T::e7 * k7[i]);
      finite = finite && std::isfinite(y1[i]) && std::isfinite(errv[i]);
    }
    const double err = finite ? detail::scaled_norm(errv, y, y1, tol)
                              : std::numeric_limits<double>::infinity();

    const double fac11 = std::pow(err, expo1);
    double fac = fac11 / std::pow(facold, beta);
    fac = std::max(facc2, std::min(facc1, fac / safe));
    double hnew = std::isfinite(err) ? h / fac : h * facc2;

    if (err <= 1.0) {
      facold = std::max(err, 1e-4);
      ++stats.accepted;

      DenseSegment<N> seg;
      seg.t0 = t;
      seg.h = h;
      for (std::size_t i = 0; i < N; ++i) {
        const double ydiff = y1[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        seg.coeff[0][i] = y[i];
        seg.coeff[1][i] = ydiff;
        seg.coeff[2][i] = bspl;
        seg.coeff[3][i] = ydiff - h * k7[i] - bspl;
        seg.coeff[4][i] = h * (T::d1 * k1[i] + T::d3 * k3[i] + T::d4 * k4[i] + T::d5 * k5[i] +
                               T::d6 * k6[i] + T::d7 * k7[i]);
      }
      k1 = k7;
      y = y1;
      t = last ? t_end : t + h;

      if (!on_step(static_cast<const DenseSegment<N>&>(seg)) || last) break;
      if (reject) hnew = std::min(hnew, h);
      reject = false;
      h = std::min(hnew, hmax);
    } else {
      ++stats.rejected;
      hnew = std::isfinite(err) ? h / std::min(facc1, fac11 / safe) : h * facc2;
      reject = true;
      last = false;
      h = hnew;
    }
  }
  return stats;
}

// ---------------------------------------------------------------------------
// Drivers for the Michaelis-Menten system.

/// Full system from (s0, 0). Without options.t_end the run stops at the
/// first step where s <= 1e-6 s0 or at auto_horizon, whichever is earlier.
FullTrajectory integrate_full(const ReactionConfig& config, const IntegrationOptions& options = {});

/// Like integrate_full but stops after the step on which c - g(s) first
/// becomes non-negative. Used where only the transient matters.
FullTrajectory integrate_until_crossing(const ReactionConfig& config,
                                        const IntegrationOptions& options = {});

struct CrossingRecord {
  double t_cross = 0.0;
  double s_cross = 0.0;
  double c_cross = 0.0;
  double refinement_width = 0.0;
  /// Sign changes of c - g(s) above noise level along the scanned trajectory.
  int sign_changes = 0;
};

/// Locates the crossing of the QSS manifold on an existing trajectory
/// started at (s0, 0). Throws HorizonError without a sign change.
CrossingRecord locate_crossing(const FullTrajectory& trajectory, const ReactionConfig& config,
                               const IntegrationOptions& options = {});

/// Integrates until the crossing and refines it on the dense output.
CrossingRecord find_crossing(const ReactionConfig& config, const IntegrationOptions& options = {});

/// Reduced Michaelis-Menten equation ds/dt = -k2 e0 s / (K_M + s) from
/// (t_init, s_init), s_init in (0, s0].
ScalarTrajectory integrate_reduced(double s_init, double t_init, const ReactionConfig& config,
                                   const IntegrationOptions& options = {});

struct Envelopes {
  ScalarTrajectory lower;        // reduced equation
  ScalarTrajectory upper_U;      // reduced equation plus the enclosure constant
  ScalarTrajectory upper_delta;  // reduced equation scaled by (1 - delta)
};

enum class EnvelopeCheck {
  require_invariance,  // reject delta < delta_star
  unchecked,
};

/// Slow-phase enclosure equations from (t_tilde, s_tilde); the caller
/// asserts t_tilde >= t_cross. All three share one time horizon.
Envelopes integrate_envelopes(double s_tilde, double t_tilde, const ReactionConfig& config,
                              double delta, const IntegrationOptions& options = {},
                              EnvelopeCheck check = EnvelopeCheck::require_invariance);

}  // namespace qssa
