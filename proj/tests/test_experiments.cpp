#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "ecoepi/cli.hpp"
#include "ecoepi/experiments.hpp"
#include "ecoepi/output.hpp"
#include "test_helpers.hpp"

using namespace ecoepi;

namespace {

const ParameterSet kFig1{1.35, 0.29, 0.25, 3.2, 5000, 0.8, 1.2, Variant::Toxic};

Trajectory synthetic_trajectory(double t_end, double dt, double decay, double omega) {
  Trajectory traj;
  traj.variant = Variant::Harmless;
  traj.settings.t_end = t_end;
  traj.settings.atol = 1e-12;
  traj.settings.record_every = dt;
  for (double t = 0.0; t <= t_end + 1e-12; t += dt) {
    TrajectorySample s;
    s.t = t;
    s.x.P = 5.0 + std::exp(-decay * t) * std::sin(omega * t);
    s.x.S = 3.0;
    s.x.U = 1.0;
    s.total = s.x.P + s.x.S + s.x.U * s.x.U;
    traj.samples.push_back(s);
  }
  return traj;
}

}  // namespace

TEST_CASE("mortality sweep detects the exchange") {
  SUBCASE("harmless") {
    ParameterSet p = kFig1;
    p.variant = Variant::Harmless;
    const auto sweep = sweep_mortality(p, 2.0, 3.5, 151);
    REQUIRE(sweep.detected_transcritical.has_value());
    CHECK(std::fabs(*sweep.detected_transcritical - 2.737) <= sweep.grid_spacing);
  }
  SUBCASE("classical") {
    const ParameterSet p{1.0, 0.29, 0, 1.0, 5000, 0, 0, Variant::Classical};
    const auto sweep = sweep_mortality(p, 1400.0, 1500.0, 101);
    REQUIRE(sweep.detected_transcritical.has_value());
    CHECK(std::fabs(*sweep.detected_transcritical - 1450.0) <= sweep.grid_spacing);
  }
  SUBCASE("avoided") {
    ParameterSet p = kFig1;
    p.variant = Variant::Avoided;
    const auto sweep = sweep_mortality(p, 1.5, 2.0, 101);
    REQUIRE(sweep.detected_transcritical.has_value());
    CHECK(std::fabs(*sweep.detected_transcritical - 1.738) <= sweep.grid_spacing);
  }
}

TEST_CASE("sweep agrees with the analytic threshold across random draws") {
  std::mt19937_64 rng(11001);
  for (Variant v : {Variant::Classical, Variant::Harmless, Variant::Avoided, Variant::Toxic}) {
    int done = 0;
    for (int it = 0; it < 2000 && done < 20; ++it) {
      const ParameterSet p = testutil::random_params(rng, v);
      const double th = predator_free_jacobian_threshold(p);
      if (!(th > 0.0) || !std::isfinite(th)) continue;  // toxic draws can invert the threshold
      ++done;
      const auto sweep = sweep_mortality(p, 0.5 * th, 1.5 * th, 101);
      REQUIRE(sweep.detected_transcritical.has_value());
      CHECK(std::fabs(*sweep.detected_transcritical - th) <= sweep.grid_spacing);
      // the two-equilibria structure: never two stable points at one m
      for (const auto& pt : sweep.points) {
        const bool e1_stable = pt.predator_free_class == Classification::Stable;
        const bool coex_stable =
            pt.coexistence_class && *pt.coexistence_class == Classification::Stable;
        const bool both_stable = e1_stable && coex_stable;
        CHECK_FALSE(both_stable);
      }
    }
    CHECK(done == 20);
  }
}

TEST_CASE("oscillation diagnostics") {
  SUBCASE("constant trajectory is non-oscillatory") {
    const auto traj = synthetic_trajectory(50.0, 0.1, 0.0, 0.0);
    const auto diag = oscillation_diagnostics(traj);
    for (const auto& comp : diag.components) CHECK_FALSE(comp.oscillatory);
  }
  SUBCASE("damped sinusoid matches its envelope") {
    // e^{-0.1 t} sin t sampled at dt = 0.01
    const auto traj = synthetic_trajectory(60.0, 0.01, 0.1, 1.0);
    const auto diag = oscillation_diagnostics(traj);
    const auto& comp = diag.components[0];
    REQUIRE(comp.oscillatory);
    const double dt_windows = comp.last_window_time - comp.first_window_time;
    const double expected = std::exp(-0.1 * dt_windows);
    CHECK(std::fabs(comp.trend_ratio - expected) <= 0.05 * expected);
    CHECK_FALSE(diag.components[1].oscillatory);
    CHECK_FALSE(diag.components[2].oscillatory);
  }
  SUBCASE("needs at least 100 samples") {
    const auto traj = synthetic_trajectory(5.0, 0.1, 0.0, 0.0);
    CHECK_THROWS_AS(oscillation_diagnostics(traj), std::invalid_argument);
  }
}

TEST_CASE("figure scenario 2 reproduction") {
  const ScenarioConfig cfg = load_figure_scenario(2);
  const FigureReport fig = reproduce_figure(2, cfg.params, *cfg.initial, *cfg.integrate);
  CHECK(std::fabs(fig.coexistence.point.P - 6.410) <= 1e-3);
  CHECK(std::fabs(fig.coexistence.point.S - 4.799) <= 1e-3);
  CHECK(std::fabs(fig.coexistence.point.U - 1.672) <= 1e-3);
  CHECK(fig.coexistence.feasible);
  CHECK(fig.final_rel_distance_to_coexistence <= 1e-3);
  REQUIRE(fig.coexistence_verdict.rh.has_value());
  CHECK(std::fabs(fig.coexistence_verdict.rh->a0 - 2.667) <= 1e-3);
}

TEST_CASE("figure reproduction is deterministic") {
  const ScenarioConfig cfg = load_figure_scenario(2);
  const FigureReport a = reproduce_figure(2, cfg.params, *cfg.initial, *cfg.integrate);
  const FigureReport b = reproduce_figure(2, cfg.params, *cfg.initial, *cfg.integrate);
  std::ostringstream csv_a, csv_b;
  write_trajectory_csv(csv_a, a.trajectory);
  write_trajectory_csv(csv_b, b.trajectory);
  CHECK(csv_a.str() == csv_b.str());
  REQUIRE(a.trajectory.samples.size() == b.trajectory.samples.size());
  CHECK(a.final_rel_distance_to_coexistence == b.final_rel_distance_to_coexistence);
}

TEST_CASE("sweep input validation") {
  CHECK_THROWS_AS(sweep_mortality(kFig1, -1.0, 2.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(sweep_mortality(kFig1, 1.0, 2.0, 1), std::invalid_argument);
}
