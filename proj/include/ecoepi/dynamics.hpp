#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ecoepi/params.hpp"

namespace ecoepi {

// Computed totals may exceed the analytic ceiling by this relative slack
// before the bound check fails.
inline constexpr double kBoundRelSlack = 1e-6;

struct IntegrationSettings {
  double t_end = 0.0;
  double rtol = 1e-8;
  double atol = 1e-12;
  double dt_init = 0.0;  // 0: chosen as min(dt_max, max(1e-3 t_end, 1e-6))
  double dt_max = 0.0;
  double record_every = 0.0;  // sampling interval; 0 records every accepted step

  // Requires 0 < rtol <= 1e-2, atol > 0, and for t_end > 0 also
  // 0 < dt_init <= dt_max <= t_end (after the dt_init default is applied).
  // t_end == 0 yields a single-sample trajectory.
  void validate() const;

  friend bool operator==(const IntegrationSettings&, const IntegrationSettings&) = default;
};

// Analytic ceiling on the total population T = P + S + U^2: with any decay
// rate 0 < q < min(mu, m) and Psi = K (r + q)^2 / (4 r), every trajectory
// obeys T(t) <= max(Psi / q, T(0)).
struct BoundednessBound {
  double q = 0.0;
  double Psi = 0.0;
  double T0 = 0.0;
  double bound = 0.0;  // max(Psi / q, T0)
};

struct TrajectorySample {
  double t = 0.0;
  State x;
  double total = 0.0;  // P + S + U^2
};

struct IntegrationDiagnostics {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t clamp_events = 0;
  std::size_t rhs_evaluations = 0;
  // Steps taken with U pinned at its absorbing boundary (see integrate).
  std::size_t frozen_steps = 0;
};

struct Trajectory {
  Variant variant = Variant::Harmless;
  IntegrationSettings settings;
  std::vector<TrajectorySample> samples;
  IntegrationDiagnostics diagnostics;
  std::optional<BoundednessBound> monitor;
};

class StepSizeUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonFiniteState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Builds the boundedness ceiling for a three-dimensional variant. The default
// decay rate is the midpoint q = min(mu, m) / 2; an explicit q outside
// (0, min(mu, m)) is rejected.
BoundednessBound boundedness_bound(const ParameterSet& params, const State& x0,
                                   std::optional<double> q = std::nullopt);

// Adaptive Dormand-Prince 4(5) integration with uniform output sampling via
// fourth-order dense interpolation. Local error is controlled to rtol/atol
// with safety factor 0.9 and step growth/shrink clamps x5 / x0.1. A component
// landing in [-atol, 0) is clamped to zero and the event recorded; an
// excursion below -atol rejects the step and halves it. When a clamped U sits
// at zero while its derivative still points outward (possible since the U
// axis is not flow-invariant once predators graze the herd boundary), U is
// held at zero until beta S - b P turns nonnegative again, mirroring the
// extinct-infected subsystem. Throws StepSizeUnderflow when no acceptable
// step >= 1e-14 t_end exists and NonFiniteState on overflow.
Trajectory integrate(const ParameterSet& params, const State& x0,
                     const IntegrationSettings& settings,
                     std::optional<BoundednessBound> monitor = std::nullopt);

struct BoundCheck {
  bool pass = false;
  double max_ratio = 0.0;  // max over samples of T / bound
  double worst_t = 0.0;
};

// Checks T(t) <= bound (1 + kBoundRelSlack) at every sample.
BoundCheck verify_bound(const Trajectory& traj, const BoundednessBound& bb);

}  // namespace ecoepi
