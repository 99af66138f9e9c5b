#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jt/analysis.hpp"
#include "jt/errors.hpp"
#include "jt/semiclassical.hpp"

using namespace jt;

namespace {

const ModelParams kRef{0.02, 0.01};

ClassicalState released(double x0) {
  ClassicalState s;
  s.x = x0;
  s.sz = 1.0;
  return s;
}

}  // namespace

TEST_CASE("equations of motion by substitution") {
  auto d = wong_rhs(released(10.0), kRef, 1);
  CHECK(d.x == 0.0);
  CHECK(d.px == doctest::Approx(-0.2));
  CHECK(d.y == 0.0);
  CHECK(d.py == 0.0);
  CHECK(d.sx == 0.0);
  CHECK(d.sy == doctest::Approx(-0.1));
  CHECK(d.sz == 0.0);

  const auto d2 = wong_rhs(released(10.0), kRef, 2);
  CHECK(d2.sy == doctest::Approx(-0.2));
  CHECK(d2.px == d.px);

  ClassicalState general{1.5, -2.0, 0.3, 0.7, 0.6, 0.0, 0.8};
  const auto g1 = wong_rhs(general, kRef, 1);
  const auto g2 = wong_rhs(general, kRef, 2);
  CHECK(g1.x == doctest::Approx(0.02 * 0.3));
  CHECK(g1.px == doctest::Approx(-0.02 * 1.5 - 0.01 * 0.6));
  CHECK(g1.py == doctest::Approx(0.02 * 2.0));
  CHECK(g1.sx == doctest::Approx(0.01 * -2.0 * 0.8));
  CHECK(g1.sy == doctest::Approx(-0.01 * 1.5 * 0.8));
  CHECK(g1.sz == doctest::Approx(0.01 * (1.5 * 0.0 + 2.0 * 0.6)));
  CHECK(g2.sx == doctest::Approx(2.0 * g1.sx));
  CHECK(g2.sz == doctest::Approx(2.0 * g1.sz));

  ClassicalState spinless{3.0, 4.0, 0.5, -0.5, 0.0, 0.0, 0.0};
  d = wong_rhs(spinless, kRef);
  CHECK(d.sx == 0.0);
  CHECK(d.sy == 0.0);
  CHECK(d.sz == 0.0);
  CHECK(d.px == doctest::Approx(-0.06));
  CHECK(d.py == doctest::Approx(-0.08));

  ClassicalState at_ci{0.0, 0.0, 1.0, 2.0, 0.3, 0.4, 0.5};
  d = wong_rhs(at_ci, kRef);
  CHECK(d.sx == 0.0);
  CHECK(d.sy == 0.0);
  CHECK(d.sz == 0.0);

  CHECK_THROWS_AS(check_spin_factor(3), PreconditionError);
  CHECK_THROWS_AS(wong_rhs(at_ci, kRef, 0), PreconditionError);
}

TEST_CASE("harmonic oracle with k = 0") {
  const ModelParams free{0.02, 0.0};
  const double period = 2.0 * std::numbers::pi / free.omega;
  const auto tr = rk4_integrate(released(10.0), free, 0.01, period, 1, 100);
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    worst = std::max(worst, std::abs(tr.states[i].x - 10.0 * std::cos(free.omega * tr.t[i])));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("integration records") {
  const auto tr = rk4_integrate(released(10.0), kRef, 0.1, 1.0, 1, 3);
  REQUIRE(tr.t.size() == 5);  // steps 0, 3, 6, 9 and the final 10
  CHECK(tr.t[3] == doctest::Approx(0.9));
  CHECK(tr.t.back() == doctest::Approx(1.0));
  CHECK(tr.states.front() == released(10.0));

  CHECK_THROWS_AS(rk4_integrate(released(10.0), kRef, 0.0, 1.0), PreconditionError);
  auto bad = released(10.0);
  bad.px = NAN;
  CHECK_THROWS_AS(rk4_integrate(bad, kRef, 0.1, 1.0), NonFiniteError);

  const auto series = to_series(tr, kRef);
  CHECK(series.names() == semiclassical_channels());
  CHECK(series.channel("energy")[0] == doctest::Approx(1.0));
  CHECK(series.channel("spin_norm")[0] == 1.0);
}

TEST_CASE("transverse drift starts positive") {
  const auto tr = rk4_integrate(released(10.0), kRef, 0.01, 20.0, 1, 10);
  for (std::size_t i = 1; i < tr.t.size(); ++i) CHECK(tr.states[i].y > 0.0);
}

TEST_CASE("long-run conservation at dt = 0.01") {
  for (int factor : {1, 2}) {
    CAPTURE(factor);
    const auto tr = rk4_integrate(released(10.0), kRef, 0.01, 15000.0, factor, 1000);
    const auto report = conservation_report(to_series(tr, kRef));
    CHECK(*report.spin_norm_drift < 1e-10);
    CHECK(*report.energy_drift < 1e-8);
  }
}

TEST_CASE("step refinement") {
  // dt = 0.01 against the dt/10 oracle, and fourth-order error decay
  const double t = 500.0;
  const auto fine = rk4_integrate(released(10.0), kRef, 0.001, t, 1, 100000).states.back();
  const auto mid = rk4_integrate(released(10.0), kRef, 0.01, t, 1, 100000).states.back();
  const auto coarse = rk4_integrate(released(10.0), kRef, 0.25, t, 1, 100000).states.back();
  const auto coarser = rk4_integrate(released(10.0), kRef, 0.5, t, 1, 100000).states.back();
  CHECK(std::abs(mid.y - fine.y) < 1e-10);
  CHECK(std::abs(mid.sz - fine.sz) < 1e-10);
  const double e1 = std::abs(coarser.y - fine.y);
  const double e2 = std::abs(coarse.y - fine.y);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("RK4 energy loss on the harmonic orbit") {
  // amplification of one step on x' = w p, p' = -w x: |R|^2 = 1 - th^6/72 + th^8/576
  const ModelParams free{0.02, 0.0};
  for (double dt : {0.8, 1.6}) {
    const double th = free.omega * dt;
    const double amp2 = 1.0 - std::pow(th, 6) / 72.0 + std::pow(th, 8) / 576.0;
    const auto steps = static_cast<double>(std::lround(1000.0 / dt));
    const auto tr = rk4_integrate(released(10.0), free, dt, 1000.0, 1, 1);
    const auto report = conservation_report(to_series(tr, free));
    CHECK(*report.energy_drift == doctest::Approx(1.0 - std::pow(amp2, steps)).epsilon(1e-3));
  }
}

TEST_CASE("mirror symmetry") {
  // (y, py, sy, sz) -> -(y, py, sy, sz) maps solutions onto solutions; the
  // spin part is the action of sigma_x that accompanies the reflection
  const ClassicalState a{9.0, 0.4, 0.2, -0.3, 0.36, 0.48, 0.8};
  ClassicalState b = a;
  b.y = -a.y;
  b.py = -a.py;
  b.sy = -a.sy;
  b.sz = -a.sz;
  const auto ta = rk4_integrate(a, kRef, 0.05, 300.0, 1, 20);
  const auto tb = rk4_integrate(b, kRef, 0.05, 300.0, 1, 20);
  for (std::size_t i = 0; i < ta.t.size(); ++i) {
    CHECK(tb.states[i].x == ta.states[i].x);
    CHECK(tb.states[i].y == -ta.states[i].y);
    CHECK(tb.states[i].px == ta.states[i].px);
    CHECK(tb.states[i].py == -ta.states[i].py);
    CHECK(tb.states[i].sx == ta.states[i].sx);
    CHECK(tb.states[i].sy == -ta.states[i].sy);
    CHECK(tb.states[i].sz == -ta.states[i].sz);
  }

  SUBCASE("flipping y, py, sy alone is not a symmetry") {
    ClassicalState c = a;
    c.y = -a.y;
    c.py = -a.py;
    c.sy = -a.sy;
    const auto tc = rk4_integrate(c, kRef, 0.05, 300.0, 1, 20);
    CHECK(std::abs(tc.states.back().y + ta.states.back().y) > 1e-3);
  }
}

TEST_CASE("short-time closed form") {
  CHECK(short_time_prediction(0.0, kRef, 10.0) == 0.0);
  CHECK(short_time_prediction(10.0, kRef, 10.0) ==
        doctest::Approx(0.02 * 1e-4 * 10.0 * 1000.0 / 6.0).epsilon(1e-15));
  CHECK(short_time_prediction(3.0, {0.02, 0.02}, 10.0) ==
        doctest::Approx(4.0 * short_time_prediction(3.0, kRef, 10.0)).epsilon(1e-15));

  SUBCASE("leading term of the integrated motion") {
    // relative deviation vanishes like t^2 as t -> 0
    const auto tr = rk4_integrate(released(10.0), kRef, 0.001, 2.0, 1, 250);
    auto rel = [&](std::size_t i) {
      const double p = short_time_prediction(tr.t[i], kRef, 10.0);
      return (tr.states[i].y - p) / p;
    };
    // records every 0.25
    CHECK(std::abs(rel(2)) < 2e-4);   // t = 0.5
    CHECK(std::abs(rel(4)) < 1e-3);   // t = 1
    CHECK(rel(8) / rel(4) == doctest::Approx(4.0).epsilon(0.02));
  }

  SUBCASE("spin factor 2 doubles the leading term") {
    const auto tr = rk4_integrate(released(10.0), kRef, 0.001, 0.5, 2, 500);
    CHECK(tr.states.back().y ==
          doctest::Approx(2.0 * short_time_prediction(0.5, kRef, 10.0)).epsilon(1e-3));
  }
}
