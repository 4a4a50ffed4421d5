#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "qssa/bounds.hpp"
#include "qssa/errors.hpp"

using namespace qssa;
using doctest::Approx;

TEST_CASE("Lyapunov bound endpoints") {
  const auto& c = fixtures::fig2_bottom_left;
  const auto e = epsilon_suite(c);
  const double L0 = c.s0 * e.eps_SSl;
  CHECK(lyapunov_l2_bound(0.3, 0.3, L0, c) == Approx(L0 * L0).epsilon(1e-15));
  const double limit = 0.5 * e.eps_SSl * e.eps_SSl * e.eps_MM * e.eps_MM * c.s0 * c.s0;
  CHECK(lyapunov_l2_bound(1e3, 0.0, L0, c) == Approx(limit).epsilon(1e-14));
  CHECK(lyapunov_l2_bound(1e3, 0.0, L0, c, 1.0) == Approx(2 * limit).epsilon(1e-14));
  CHECK_THROWS_AS(lyapunov_l2_bound(0.1, 0.2, L0, c), InvalidInput);

  CHECK(e.eps_MM == Approx(0.0025).epsilon(1e-15));
  CHECK(lyapunov_settling_time(c) == Approx(0.05991464547107982).epsilon(1e-14));
  CHECK(settled_offset_bound(c) == Approx(std::sqrt(1.5) * e.eps_SSl * e.eps_MM).epsilon(1e-15));
}

TEST_CASE("linear Lyapunov coefficients and their constant bounds") {
  const auto& c = fixtures::ww_bottom;
  const double q = 0.97;
  const auto rb = lyapunov_rate_bounds(c, q);
  for (int i = 0; i <= 50; ++i) {
    const double s = c.s0 * i / 50.0;
    const auto ab = linear_lyapunov_coefficients(s, c);
    CHECK(ab.A <= rb.A_upper * (1 + 1e-14));
    CHECK(ab.B <= rb.B_upper * (1 + 1e-14));
    if (s >= q * c.s0) {
      CHECK(ab.A >= rb.A_lower * (1 - 1e-14));
      CHECK(ab.B >= rb.B_lower * (1 - 1e-14));
    }
  }
}

TEST_CASE("crossing-time bounds on the crossing-time grid") {
  const auto tb = crossing_time_bounds(fixtures::fig2_bottom_left, 0.97);
  CHECK(tb.t_SSl == Approx(0.0025).epsilon(1e-15));
  CHECK(tb.t_ell == Approx(0.016679188812834817).epsilon(1e-13));
  CHECK(tb.t_ell_dagger == Approx(0.016669750495871894).epsilon(1e-13));
  CHECK(tb.C_star == Approx(8.0).epsilon(1e-15));
  CHECK(tb.C_q == Approx(8.0018556701030928).epsilon(1e-13));
  CHECK(tb.t_u_dagger_1 == Approx(0.020178046349924658).epsilon(1e-13));
  CHECK(tb.t_u_q == Approx(0.020485914719255861).epsilon(1e-13));
  CHECK(tb.t_u_dagger_q == Approx(0.020880588596235633).epsilon(1e-13));
  CHECK(tb.gap_rel == Approx(0.034745300000579269).epsilon(1e-12));
  CHECK(tb.lambda == Approx(400.0).epsilon(1e-15));

  const auto one = crossing_time_bounds(fixtures::fig2_bottom_left, 1.0);
  CHECK(one.t_u_dagger_q == one.t_u_dagger_1);
  CHECK_THROWS_AS(crossing_time_bounds(fixtures::fig2_bottom_left, 0.0), InvalidInput);
}

TEST_CASE("property: C(q) between 1/q and C*/q") {
  for (const auto& c : fixtures::random_configs(300, 41, 1.0)) {
    for (double q : {0.5, 0.8, 0.97}) {
      const auto tb = crossing_time_bounds(c, q);
      CHECK(tb.C_q > 1 / q);
      CHECK(tb.C_q < tb.C_star / q);
      CHECK(tb.t_u_dagger_1 <= tb.t_u_dagger_q);
      CHECK(tb.gap_rel > 0.0);
    }
  }
}

TEST_CASE("property: bracket ordering where the hypotheses hold") {
  int held = 0;
  for (const auto& c : fixtures::random_configs(400, 42, 0.01)) {
    const auto h = check_upper_time_hypotheses(c, 0.97);
    const auto tb = crossing_time_bounds(c, 0.97);
    CHECK(tb.t_ell_dagger <= tb.t_ell);
    if (!h.all_hold) continue;
    ++held;
    CHECK(tb.t_ell <= tb.t_u_q);
    CHECK(tb.t_u_q <= tb.t_u_dagger_q);
  }
  CHECK(held > 20);
}

TEST_CASE("hypothesis check, worked example") {
  const auto h = check_upper_time_hypotheses(250.0, 1e-4, 0.97);
  CHECK(h.threshold_eps == Approx(0.00049102453594646464).epsilon(1e-13));
  CHECK(h.cond_q_log_value == Approx(0.81637043502889779).epsilon(1e-13));
  CHECK(h.cond_q_log);
  CHECK(h.cond_eps_q);
  CHECK(h.all_hold);
  CHECK_FALSE(check_upper_time_hypotheses(250.0, std::exp(-1.0), 0.97).cond_eps_e);
  CHECK_FALSE(check_upper_time_hypotheses(250.0, 1e-3, 0.97).all_hold);
  CHECK_THROWS_AS(check_upper_time_hypotheses(250.0, 1e-4, 0.4), InvalidInput);
  CHECK_THROWS_AS(check_upper_time_hypotheses(250.0, 1e-4, 1.0), InvalidInput);
}

TEST_CASE("onset time") {
  const auto& c = fixtures::fig2_bottom_left;
  CHECK(onset_time(c) == Approx(0.014978661367769955).epsilon(1e-13));
  CHECK(onset_time(c, std::exp(1.0)) == Approx(0.014978661367769955 + 0.0025).epsilon(1e-13));
}

TEST_CASE("depletion bounds") {
  const auto& c = fixtures::fig2_bottom_left;
  const auto d = depletion_bounds(c, 0.97);
  CHECK(d.upper == Approx(0.020880588596235633).epsilon(1e-13));
  CHECK(d.lower == Approx(0.0020837188119839867).epsilon(1e-13));
  CHECK(d.Delta_dstar == Approx(0.014978661367769955).epsilon(1e-13));
  CHECK(d.lower_valid);
  CHECK(d.lower <= d.upper);
  CHECK(depletion_bounds(c, 0.97, 1.0).lower_sharp == Approx(d.lower).epsilon(1e-15));

  auto tiny = c;
  tiny.e0 = 1e-12;
  const auto z = depletion_bounds(tiny, 0.97);
  CHECK(z.lower < 1e-9);
  CHECK(z.upper < 1e-9);
  CHECK_THROWS_AS(depletion_bounds(c, 1.0), InvalidInput);
  CHECK_THROWS_AS(depletion_bounds(c, 0.97, 0.0), InvalidInput);
}

TEST_CASE("slow-phase error bounds") {
  const auto& c = fixtures::ww_bottom;
  const auto b = slow_phase_error_bounds(c, 0.97, 8.0, 8.0);
  CHECK(b.eps_L == Approx(0.0066).epsilon(1e-14));
  CHECK(b.eps_W == Approx(0.0040860245722063554).epsilon(1e-12));
  CHECK(b.total_with_L == Approx(c.s0 * b.eps_L).epsilon(1e-15));
  CHECK(b.total_with_W == Approx(c.s0 * b.eps_W).epsilon(1e-15));
  const auto g = slow_phase_error_bounds(c, 0.97, 9.0, 8.0);
  CHECK(g.total_with_L == Approx(1.0 + c.s0 * b.eps_L).epsilon(1e-15));
  CHECK(std::isnan(b.t0_bound_a));
  CHECK(b.t0_asymptotic == Approx(0.0051120388514952714).epsilon(1e-13));

  // Corollary first term on the crossing-time grid.
  const auto& f = fixtures::fig2_bottom_left;
  const auto cb = slow_phase_error_bounds(f, 0.97, f.s0, f.s0);
  const double eps = 0.0025;
  CHECK(cb.corollary_with_L - cb.eps_L ==
        Approx(eps / 0.97 * std::log(1 + 8.0 / (0.97 * eps))).epsilon(1e-12));
}

TEST_CASE("error bounds from t = 0") {
  const auto& c = fixtures::ww_bottom;
  CHECK(t0_bound_asymptotic(c, 0.97) == Approx(0.0051120388514952714).epsilon(1e-13));
  // exact_b needs the hypotheses; this configuration fails cond_eps_q.
  CHECK_FALSE(check_upper_time_hypotheses(c, 0.97).all_hold);
  CHECK_THROWS_AS(t0_bound_exact_b(c, 0.97), InvalidInput);
  CHECK_THROWS_AS(t0_error_bound(c, 0.97, T0Mode::exact_a), InvalidInput);

  auto tiny = c;
  tiny.e0 = 1e-9;
  CHECK(t0_bound_exact_b(tiny, 0.97) < 1e-8);
  CHECK(t0_bound_asymptotic(tiny, 0.97) < 1e-8);
  const CrossingRecord rec{0.02, 9.9, 0.0, 0.0, 1};
  CHECK(t0_bound_running(0.0, tiny, rec) == 0.0);
  CHECK(t0_bound_exact_a(tiny, rec) < 1e-8);
  const auto run = t0_error_bound(tiny, 0.97, T0Mode::running, &rec);
  CHECK(run.running(0.01) == Approx(t0_bound_running(0.01, tiny, rec)));
}

TEST_CASE("small-k1 asymptotics") {
  const auto a = small_k1_asymptotics(fixtures::make(1e-4, 100, 100, 200, 1));
  CHECK(a.C_star.exact == Approx(2.00040002).epsilon(1e-12));
  CHECK(a.C_star.asymptotic == 2.0);
  CHECK(a.eps_SSl.exact / a.eps_SSl.asymptotic == Approx(1.0).epsilon(1e-4));
  CHECK(a.eps_inf_undefined_in_text);

  double prev = 1;
  for (double k1 : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const auto b = small_k1_asymptotics(fixtures::make(k1, 100, 100, 200, 1));
    const double rel = std::abs(b.t_SSl.exact - b.t_SSl.asymptotic) / b.t_SSl.exact;
    CHECK(rel == Approx(k1).epsilon(1e-9));
    CHECK(rel < prev);
    prev = rel;
  }
}

TEST_CASE("property: bounds grow with e0") {
  for (double s0 : {2.0, 20.0, 200.0, 2000.0}) {
    TransientBounds prev_t{};
    DepletionBounds prev_d{};
    SlowErrorParams prev_p{};
    bool first = true;
    for (double e0 : {0.025, 0.05, 0.075, 0.1, 0.25, 0.5, 0.75, 1.0}) {
      const auto c = fixtures::make(1, 100, 100, s0, e0);
      const auto tb = crossing_time_bounds(c);
      const auto d = depletion_bounds(c);
      const auto p = slow_error_params(c);
      CHECK(tb.gap_rel > 0);
      if (!first) {
        // Crossing times shrink as eps grows; depletion and error scales grow.
        CHECK(tb.t_ell_dagger < prev_t.t_ell_dagger);
        CHECK(tb.t_u_dagger_q < prev_t.t_u_dagger_q);
        CHECK(d.upper > prev_d.upper);
        CHECK(p.eps_L > prev_p.eps_L);
        CHECK(p.eps_W > prev_p.eps_W);
        CHECK(p.Delta_dstar > prev_p.Delta_dstar);
      }
      prev_t = tb;
      prev_d = d;
      prev_p = p;
      first = false;
    }
  }
}

TEST_CASE("asymptotic forms approach the exact ones as e0 -> 0") {
  double prev_l = 1, prev_u = 1, prev_d = 1;
  for (int k = 1; k <= 6; ++k) {
    const auto c = fixtures::make(1, 100, 100, 200, std::pow(10.0, -k));
    const auto tb = crossing_time_bounds(c);
    const auto d = depletion_bounds(c);
    const double gl = std::abs(tb.t_ell_dagger - tb.t_ell_dagger_asymptotic) / tb.t_ell_dagger;
    const double gu = std::abs(tb.t_u_dagger_q - tb.t_u_dagger_q_asymptotic) / tb.t_u_dagger_q;
    const double gd = std::abs(d.upper - d.upper_asymptotic) / d.upper;
    CHECK(gl < prev_l);
    CHECK(gu < prev_u);
    CHECK(gd < prev_d);
    prev_l = gl;
    prev_u = gu;
    prev_d = gd;
  }
  CHECK(prev_l < 0.05);
  CHECK(prev_u < 0.05);
  CHECK(prev_d < 0.05);
}
