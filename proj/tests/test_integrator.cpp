#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "qssa/bounds.hpp"
#include "qssa/errors.hpp"
#include "qssa/integrator.hpp"
#include "qssa/lambert_w.hpp"

using namespace qssa;
using doctest::Approx;

namespace {

double offset(const Vec<2>& y, const ReactionConfig& c) { return y[1] - qss_manifold(y[0], c); }

}  // namespace

TEST_CASE("option validation") {
  IntegrationOptions o;
  CHECK_NOTHROW(validate_options(o));
  o.rel_tol = 1e-14;
  CHECK_THROWS_AS(validate_options(o), InvalidInput);
  o.rel_tol = 1e-2;
  CHECK_THROWS_AS(validate_options(o), InvalidInput);
  o = {};
  o.abs_tol = 0.0;
  CHECK_THROWS_AS(validate_options(o), InvalidInput);
  o = {};
  o.max_steps = 0;
  CHECK_THROWS_AS(validate_options(o), InvalidInput);
  CHECK(absolute_tolerance({}, fixtures::fig1) == Approx(1e-10).epsilon(1e-15));
  CHECK(auto_horizon(fixtures::fig2_bottom_left) == Approx(10 * 400.0 / 100.0).epsilon(1e-15));
}

TEST_CASE("trajectory shape on the phase-plane example") {
  const auto& c = fixtures::fig1;
  const auto tr = integrate_full(c);
  const auto t = tr.times();
  const auto y = tr.states();
  REQUIRE(t.size() > 10);
  CHECK(t.front() == 0.0);
  CHECK(y.front()[0] == c.s0);
  CHECK(y.front()[1] == 0.0);
  int changes = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    CHECK(t[i] > t[i - 1]);
    CHECK(y[i][0] <= y[i - 1][0] + 1e-10);
    if ((offset(y[i], c) >= 0) != (offset(y[i - 1], c) >= 0)) ++changes;
  }
  CHECK(changes == 1);
  CHECK(y.back()[0] <= 1e-6 * c.s0);
  // Dense output agrees with the nodes.
  CHECK(tr.at(t[5])[0] == Approx(y[5][0]).epsilon(1e-14));
}

TEST_CASE("zero enzyme leaves the state at rest") {
  auto c = fixtures::fig1;
  c.e0 = 0;
  const auto tr = integrate_full(c);
  for (const auto& y : tr.states()) {
    CHECK(y[0] == c.s0);
    CHECK(y[1] == 0.0);
  }
}

TEST_CASE("depletion run on the crossing-time grid") {
  const auto& c = fixtures::fig2_bottom_left;
  const auto a = integrate_full(c);
  CHECK(a.back()[0] < 1e-6 * c.s0);
  CHECK(a.t_end() < auto_horizon(c));
  // Tightened run agrees at a common time.
  IntegrationOptions fine;
  fine.rel_tol = 5e-11;
  const auto b = integrate_full(c, fine);
  const double t = 0.5 * std::min(a.t_end(), b.t_end());
  CHECK(std::abs(a.at(t)[0] - b.at(t)[0]) <= 10 * 1e-10 * c.s0);
}

TEST_CASE("resource and horizon errors") {
  IntegrationOptions o;
  o.max_steps = 5;
  CHECK_THROWS_AS(integrate_full(fixtures::fig1, o), ResourceError);
  IntegrationOptions h;
  h.t_end = 1e-6;
  CHECK_THROWS_AS(find_crossing(fixtures::fig1, h), HorizonError);
}

TEST_CASE("crossing on the crossing-time grid") {
  const auto& c = fixtures::fig2_bottom_left;
  const auto x = find_crossing(c);
  const auto tb = crossing_time_bounds(c);
  // Frozen value; independently reproduced with an 8th-order integrator at rtol 1e-13.
  CHECK(x.t_cross == Approx(0.0201877343).epsilon(2e-8));
  CHECK(x.sign_changes == 1);
  CHECK(tb.t_ell_dagger == Approx(0.016669750495871894).epsilon(1e-13));
  CHECK(tb.t_ell_dagger <= x.t_cross);
  CHECK(x.t_cross <= tb.t_u_q);
  // The q -> 1 heuristic falls slightly short of the measured crossing.
  CHECK(tb.t_u_dagger_1 == Approx(0.020178046349924658).epsilon(1e-13));
  CHECK(tb.t_u_dagger_1 - x.t_cross == Approx(-9.69e-6).epsilon(1e-2));
  CHECK(std::abs(x.c_cross - qss_manifold(x.s_cross, c)) <= absolute_tolerance({}, c));
  CHECK(x.refinement_width <= 1e-12);
}

TEST_CASE("crossing maximizes the complex") {
  const auto& c = fixtures::fig1;
  const auto tr = integrate_full(c);
  const auto x = locate_crossing(tr, c);
  double cmax = 0;
  tr.for_each_sample(8, [&](double, const Vec<2>& y) { cmax = std::max(cmax, y[1]); });
  CHECK(cmax <= x.c_cross + 1e-9 * c.e0);
  CHECK(x.sign_changes == 1);
}

TEST_CASE("event refinement is self-consistent") {
  const auto& c = fixtures::fig2_bottom_left;
  IntegrationOptions o;
  o.event_tol = 1e-9;
  const auto coarse = find_crossing(c, o);
  o.event_tol = 5e-10;
  const auto fine = find_crossing(c, o);
  CHECK(std::abs(fine.t_cross - coarse.t_cross) <= coarse.refinement_width);
}

TEST_CASE("crossing time converges with the tolerance") {
  for (const auto& c : {fixtures::fig1, fixtures::fig2_bottom_left, fixtures::ww_bottom}) {
    IntegrationOptions a, b;
    a.rel_tol = 1e-10;
    b.rel_tol = 5e-11;
    const double ta = find_crossing(c, a).t_cross;
    const double tb = find_crossing(c, b).t_cross;
    // The crossing is located on L = c - g(s), whose time derivative is small
    // against c: measured amplification is a few hundred times rel_tol.
    CHECK(std::abs(ta - tb) / tb < 1000 * a.rel_tol);
  }
}

TEST_CASE("reduced equation") {
  const auto& c = fixtures::fig1;
  const auto tr = integrate_reduced(c.s0, 0.0, c);
  const auto y = tr.states();
  // Strictly decreasing until the solution reaches the absolute tolerance floor.
  for (std::size_t i = 1; i < y.size() && y[i - 1][0] > 1e-8 * c.s0; ++i) CHECK(y[i][0] < y[i - 1][0]);
  CHECK(y.back()[0] < 1e-3 * c.s0);

  double worst = 0;
  tr.for_each_sample(8, [&](double t, const Vec<1>& v) {
    worst = std::max(worst, std::abs(v[0] - schnell_mendoza(c.s0, 0.0, t, c, 0.0).s_lower));
  });
  CHECK(worst <= 1e-8 * c.s0);

  auto still = c;
  still.e0 = 0;
  const auto flat = integrate_reduced(50, 0.0, still);
  for (const auto& v : flat.states()) CHECK(v[0] == 50.0);
  CHECK_THROWS_AS(integrate_reduced(0.0, 0.0, c), InvalidInput);
  CHECK_THROWS_AS(integrate_reduced(2 * c.s0, 0.0, c), InvalidInput);
}

TEST_CASE("enclosure equations") {
  const auto& c = fixtures::ww_bottom;
  const auto full = integrate_full(c);
  const auto x = locate_crossing(full, c);

  const auto same = integrate_envelopes(x.s_cross, x.t_cross, c, 0.0, {}, EnvelopeCheck::unchecked);
  for (std::size_t i = 0; i < same.lower.size(); ++i) {
    CHECK(same.lower.states()[i][0] == same.upper_delta.states()[i][0]);
  }
  CHECK_THROWS_AS(integrate_envelopes(x.s_cross, x.t_cross, c, 0.0), InvalidInput);

  const double ds = delta_star(c).value;
  const auto env = integrate_envelopes(x.s_cross, x.t_cross, c, ds);
  const double slack = 10 * (1e-10 * c.s0 + absolute_tolerance({}, c));
  const double eps_L = slow_error_params(c).eps_L;
  const double t_stop = std::min(env.lower.t_end(), full.t_end());
  full.for_each_sample(8, [&](double t, const Vec<2>& y) {
    if (t < x.t_cross || t > t_stop) return;
    CHECK(env.lower.at(t)[0] <= y[0] + slack);
    CHECK(y[0] <= env.upper_delta.at(t)[0] + slack);
  });
  env.lower.for_each_sample(8, [&](double t, const Vec<1>& lo) {
    CHECK(env.upper_U.at(t)[0] - lo[0] <= c.s0 * eps_L + slack);
  });
}

TEST_CASE("complex ceiling and simple envelopes") {
  for (const auto& c : {fixtures::fig1, fixtures::ww_top, fixtures::zz_bottom}) {
    const auto tr = integrate_full(c);
    const double ceiling = c.e0 * c.s0 / (derive_constants(c).K_M + c.s0);
    const double slack = 10 * (1e-10 * c.s0 + absolute_tolerance({}, c));
    tr.for_each_sample(8, [&](double t, const Vec<2>& y) {
      CHECK(y[1] <= ceiling + slack);
      CHECK(y[0] >= c.s0 * std::exp(-c.rates.k1 * c.e0 * t) - slack);
    });
  }
}
