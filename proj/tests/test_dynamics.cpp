#include <cmath>
#include <random>

#include "doctest.h"
#include "ecoepi/dynamics.hpp"
#include "ecoepi/equilibria.hpp"
#include "ecoepi/model.hpp"
#include "test_helpers.hpp"

using namespace ecoepi;

namespace {

const ParameterSet kFig1{1.35, 0.29, 0.25, 3.2, 5000, 0.8, 1.2, Variant::Toxic};
const ParameterSet kFig2{1.35, 0.29, 0.025, 3.2, 5000, 0.8, 2.2, Variant::Toxic};

IntegrationSettings settings(double t_end, double rtol = 1e-8, double atol = 1e-12,
                             double dt_max = 1.0, double record_every = 0.5) {
  IntegrationSettings s;
  s.t_end = t_end;
  s.rtol = rtol;
  s.atol = atol;
  s.dt_max = dt_max;
  s.record_every = record_every;
  return s;
}

// Independent fixed-step classical Runge-Kutta oracle.
State rk4(const ParameterSet& p, State x, double t_end, double dt) {
  auto add = [](const State& a, const State& b, double w) {
    return State{a.P + w * b.P, a.S + w * b.S, a.U + w * b.U};
  };
  const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
  for (std::size_t i = 0; i < steps; ++i) {
    const State k1 = vector_field(p, x);
    const State k2 = vector_field(p, add(x, k1, dt / 2));
    const State k3 = vector_field(p, add(x, k2, dt / 2));
    const State k4 = vector_field(p, add(x, k3, dt));
    x.P += dt / 6 * (k1.P + 2 * k2.P + 2 * k3.P + k4.P);
    x.S += dt / 6 * (k1.S + 2 * k2.S + 2 * k3.S + k4.S);
    x.U += dt / 6 * (k1.U + 2 * k2.U + 2 * k3.U + k4.U);
  }
  return x;
}

}  // namespace

TEST_CASE("boundedness ceiling") {
  SUBCASE("vertex formula") {
    // Psi = K (r + q)^2 / (4 r) = 5000 * 4.2^2 / 12.8 = 6890.625 at q = 1
    State x0{2, 2, std::sqrt(6.0)};  // T0 = 10
    const auto bb = boundedness_bound(kFig2, x0, 1.0);
    CHECK(bb.Psi == doctest::Approx(6890.625).epsilon(1e-14));
    CHECK(bb.T0 == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(bb.bound == doctest::Approx(6890.625).epsilon(1e-14));
  }
  SUBCASE("large initial total wins the max") {
    const State x0{5000, 5000, 100};  // T0 = 20000 > Psi/q
    const auto bb = boundedness_bound(kFig2, x0, 1.0);
    CHECK(bb.bound == bb.T0);
  }
  SUBCASE("unit parameters") {
    const ParameterSet p{3, 1, 1, 1, 1, 1, 3, Variant::Harmless};  // min(mu, m) = 3 > q = 1
    const auto bb = boundedness_bound(p, State{0, 0, 0}, 1.0);
    CHECK(bb.Psi == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("rejects q outside the admissible range") {
    CHECK_THROWS_AS(boundedness_bound(kFig2, State{1, 1, 1}, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(boundedness_bound(kFig2, State{1, 1, 1}, 0.0), std::invalid_argument);
    const ParameterSet pc{1, 1, 0, 1, 2, 0, 0, Variant::Classical};
    CHECK_THROWS_AS(boundedness_bound(pc, State{1, 1, 0}), std::invalid_argument);
  }
}

TEST_CASE("trajectory reaches the stable coexistence point") {
  const Equilibrium eq = equilibrium_coexistence(kFig2);
  const Trajectory traj = integrate(kFig2, State{5, 5, 2}, settings(500.0));
  const State& xf = traj.samples.back().x;
  CHECK(testutil::state_inf_dist(xf, eq.point) <= 1e-3);
}

TEST_CASE("equilibria are fixed points of the integrator") {
  const ParameterSet ph{1, 1, 1, 1, 2, 1, 1, Variant::Harmless};
  const ParameterSet pc{1, 1, 0, 1, 2, 0, 0, Variant::Classical};
  for (const ParameterSet& p : {kFig2, ph, pc}) {
    const Equilibrium eq = equilibrium_coexistence(p);
    REQUIRE(eq.feasible);
    const Trajectory traj = integrate(p, eq.point, settings(50.0, 1e-9, 1e-13));
    CHECK(testutil::state_inf_dist(traj.samples.back().x, eq.point) <= 1e-8);
  }
}

TEST_CASE("classical coexistence is reached from a perturbed start") {
  const ParameterSet p{1, 1, 0, 1, 2, 0, 0, Variant::Classical};
  const Trajectory traj = integrate(p, State{0.4, 1.2, 0}, settings(200.0));
  CHECK(std::fabs(traj.samples.back().x.P - 0.5) <= 1e-4);
  CHECK(std::fabs(traj.samples.back().x.S - 1.0) <= 1e-4);
}

TEST_CASE("bound verification") {
  SUBCASE("coexistence scenario stays far below the ceiling") {
    const State x0{5, 5, 2};
    const auto bb = boundedness_bound(kFig2, x0);
    const auto traj = integrate(kFig2, x0, settings(500.0), bb);
    const auto chk = verify_bound(traj, bb);
    CHECK(chk.pass);
    CHECK(chk.max_ratio < 0.01);
  }
  SUBCASE("initial total equal to the ceiling") {
    ParameterSet p = kFig2;
    const State x0{4000, 5000, 50};  // T0 = 11500 > Psi/q for default q
    const auto bb = boundedness_bound(p, x0);
    REQUIRE(bb.bound == bb.T0);
    const auto traj = integrate(p, x0, settings(20.0), bb);
    const auto chk = verify_bound(traj, bb);
    CHECK(chk.pass);
    CHECK(chk.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(chk.worst_t == 0.0);
  }
  SUBCASE("predator-free scenario") {
    const State x0{1, 6, 4};
    const auto bb = boundedness_bound(kFig1, x0);
    const auto traj = integrate(kFig1, x0, settings(1000.0), bb);
    CHECK(verify_bound(traj, bb).pass);
  }
}

TEST_CASE("convergence under tolerance refinement and against the RK4 oracle") {
  const State x0{5, 5, 2};
  const auto s1 = settings(10.0, 1e-8, 1e-12, 1.0, 0.0);
  auto s2 = s1;
  s2.rtol *= 0.5;
  s2.atol *= 0.5;
  const State x1 = integrate(kFig2, x0, s1).samples.back().x;
  const State x2 = integrate(kFig2, x0, s2).samples.back().x;
  const double scale = std::max(1.0, testutil::state_inf_norm(x1));
  CHECK(testutil::state_inf_dist(x1, x2) <= 10.0 * s1.rtol * scale);

  const State oracle = rk4(kFig2, x0, 10.0, 1e-4);
  CHECK(testutil::state_inf_dist(x1, oracle) <= 1e-6 * scale);
}

TEST_CASE("states stay admissible under clamping") {
  // a heavy predator load drives U onto its absorbing boundary; once the
  // predators thin out the disease re-ignites and the orbit settles at the
  // feasible harmless coexistence point
  const ParameterSet p{1.35, 0.29, 0.025, 3.2, 5000, 0.8, 2.2, Variant::Harmless};
  const auto traj = integrate(p, State{50.0, 1.0, 0.1}, settings(200.0, 1e-8, 1e-10, 1.0, 0.1));
  bool hit_zero = false;
  for (const auto& s : traj.samples) {
    CHECK(s.x.P >= 0.0);
    CHECK(s.x.S >= 0.0);
    CHECK(s.x.U >= 0.0);
    if (s.x.U == 0.0) hit_zero = true;
  }
  CHECK(hit_zero);
  CHECK(traj.diagnostics.frozen_steps > 0);
  const Equilibrium eq = equilibrium_coexistence(p);
  REQUIRE(eq.feasible);
  CHECK(testutil::state_inf_dist(traj.samples.back().x, eq.point) <= 1e-4);
}

TEST_CASE("predator axis is preserved exactly") {
  const auto traj = integrate(kFig2, State{0, 5, 2}, settings(100.0));
  for (const auto& s : traj.samples) CHECK(std::fabs(s.x.P) <= 1e-14);
}

TEST_CASE("square-root substitution is consistent with the infected-density law") {
  const ParameterSet p{1.35, 0.29, 0.025, 3.2, 5000, 0.8, 2.2, Variant::Harmless};
  const auto traj = integrate(p, State{5, 5, 2}, settings(40.0, 1e-10, 1e-14, 0.5, 0.01));
  const auto& ss = traj.samples;
  for (std::size_t i = 1; i + 1 < ss.size(); ++i) {
    const auto y0 = to_infected_space(ss[i - 1].x);
    const auto y1 = to_infected_space(ss[i].x);
    const auto y2 = to_infected_space(ss[i + 1].x);
    if (y1.I <= traj.settings.atol) continue;
    const double dt = ss[i + 1].t - ss[i - 1].t;
    const double fd = (y2.I - y0.I) / dt;
    const double rhs =
        -p.mu * y1.I + p.beta * y1.S * std::sqrt(y1.I) - p.b * y1.P * std::sqrt(y1.I);
    CHECK(std::fabs(fd - rhs) <= 1e-3 * std::max(1.0, std::fabs(rhs)));
  }
}

TEST_CASE("zero horizon yields the single initial sample") {
  auto s = settings(0.0);
  const auto traj = integrate(kFig2, State{1, 2, 3}, s);
  REQUIRE(traj.samples.size() == 1);
  CHECK(traj.samples[0].t == 0.0);
  CHECK(traj.samples[0].x == State{1, 2, 3});
}

TEST_CASE("sample times are strictly increasing") {
  const auto traj = integrate(kFig2, State{5, 5, 2}, settings(50.0, 1e-8, 1e-12, 1.0, 0.25));
  for (std::size_t i = 1; i < traj.samples.size(); ++i)
    CHECK(traj.samples[i].t > traj.samples[i - 1].t);
  CHECK(traj.samples.back().t == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("integration failures") {
  SUBCASE("step size underflow under an impossible boundary push") {
    const ParameterSet p{1, 1, 1, 1, 10, 1, 1, Variant::Harmless};
    CHECK_THROWS_AS(integrate(p, State{1e8, 0, 1e-8}, settings(1.0, 1e-8, 1e-12, 0.5)),
                    StepSizeUnderflow);
  }
  SUBCASE("overflow is reported") {
    const ParameterSet p{1, 1, 1, 1, 1, 1, 1, Variant::Harmless};
    CHECK_THROWS_AS(integrate(p, State{1e200, 1e200, 1e200}, settings(10.0)), NonFiniteState);
  }
  SUBCASE("settings validation") {
    auto s = settings(10.0);
    s.rtol = 0.5;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = settings(10.0);
    s.atol = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = settings(10.0);
    s.dt_max = 20.0;  // exceeds the horizon
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = settings(10.0);
    s.dt_init = 2.0;  // exceeds dt_max
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  }
  SUBCASE("negative initial state is rejected") {
    CHECK_THROWS_AS(integrate(kFig2, State{-1, 1, 1}, settings(1.0)), std::invalid_argument);
  }
}
