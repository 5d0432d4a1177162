#include "ecoepi/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ecoepi/model.hpp"

namespace ecoepi {

void IntegrationSettings::validate() const {
  if (!(std::isfinite(t_end) && t_end >= 0.0))
    throw std::invalid_argument("t_end must be finite and >= 0");
  if (!(rtol > 0.0 && rtol <= 1e-2))
    throw std::invalid_argument("rtol must lie in (0, 1e-2]");
  if (!(atol > 0.0 && std::isfinite(atol)))
    throw std::invalid_argument("atol must be positive");
  if (!(record_every >= 0.0 && std::isfinite(record_every)))
    throw std::invalid_argument("record_every must be finite and >= 0");
  if (t_end == 0.0) return;  // single-sample trajectory; step bounds unused
  if (!(dt_max > 0.0 && dt_max <= t_end))
    throw std::invalid_argument("dt_max must satisfy 0 < dt_max <= t_end");
  if (dt_init != 0.0 && !(dt_init > 0.0 && dt_init <= dt_max))
    throw std::invalid_argument("dt_init must satisfy 0 < dt_init <= dt_max");
}

BoundednessBound boundedness_bound(const ParameterSet& params, const State& x0,
                                   std::optional<double> q) {
  if (params.variant == Variant::Classical)
    throw std::invalid_argument("the boundedness ceiling uses mu; classical variant unsupported");
  const double M = std::min(params.mu, params.m);
  BoundednessBound bb;
  bb.q = q.value_or(0.5 * M);
  if (!(bb.q > 0.0 && bb.q < M))
    throw std::invalid_argument("decay rate q must lie in (0, min(mu, m))");
  bb.Psi = params.K * (params.r + bb.q) * (params.r + bb.q) / (4.0 * params.r);
  bb.T0 = x0.P + x0.S + x0.U * x0.U;
  bb.bound = std::max(bb.Psi / bb.q, bb.T0);
  return bb;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Fourth-order continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kGrowClamp = 5.0;
constexpr double kShrinkClamp = 0.1;
constexpr double kUnderflowFrac = 1e-14;

using Vec = std::array<double, 3>;

Vec to_vec(const State& x) { return {x.P, x.S, x.U}; }
State to_state(const Vec& v) { return {v[0], v[1], v[2]}; }

bool finite(const Vec& v) {
  return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

Vec axpy(const Vec& y, double h, const Vec& k) {
  return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]};
}

}  // namespace

Trajectory integrate(const ParameterSet& params, const State& x0,
                     const IntegrationSettings& settings, std::optional<BoundednessBound> monitor) {
  settings.validate();
  if (!(std::isfinite(x0.P) && std::isfinite(x0.S) && std::isfinite(x0.U)) || x0.P < 0.0 ||
      x0.S < 0.0 || x0.U < 0.0)
    throw std::invalid_argument("initial state must be finite and nonnegative");

  Trajectory traj;
  traj.variant = params.variant;
  traj.settings = settings;
  traj.monitor = monitor;

  const double atol = settings.atol;
  auto record = [&](double t, Vec v) {
    for (double& c : v)
      if (c < 0.0 && c >= -atol) c = 0.0;
    TrajectorySample s;
    s.t = t;
    s.x = to_state(v);
    s.total = v[0] + v[1] + v[2] * v[2];
    traj.samples.push_back(s);
  };

  Vec y = to_vec(x0);
  record(0.0, y);
  const double t_end = settings.t_end;
  if (t_end == 0.0) return traj;

  bool u_frozen = false;
  auto rhs = [&](const Vec& v) -> Vec {
    ++traj.diagnostics.rhs_evaluations;
    const State d = vector_field(params, to_state(v));
    return {d.P, d.S, u_frozen ? 0.0 : d.U};
  };
  auto unfrozen_dU = [&](const Vec& v) {
    return vector_field(params, to_state(v)).U;
  };

  double h = settings.dt_init > 0.0
                 ? settings.dt_init
                 : std::min(settings.dt_max, std::max(1e-3 * t_end, 1e-6));
  const double h_floor = kUnderflowFrac * t_end;
  const double grid_eps = 1e-12 * std::max(1.0, t_end);

  double t = 0.0;
  Vec k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{};
  bool have_k1 = false;
  std::size_t next_sample = 1;  // uniform grid index when record_every > 0

  while (t < t_end - grid_eps) {
    if (h < h_floor) {
      char msg[128];
      std::snprintf(msg, sizeof(msg), "no acceptable step size >= %.3g at t = %.6g", h_floor, t);
      throw StepSizeUnderflow(msg);
    }
    if (!have_k1) {
      k1 = rhs(y);
      if (!finite(k1)) {
        char msg[96];
        std::snprintf(msg, sizeof(msg), "state overflowed at t = %.6g", t);
        throw NonFiniteState(msg);
      }
      have_k1 = true;
    }

    const double hs = std::min(h, t_end - t);

    k2 = rhs(axpy(y, hs * a21, k1));
    k3 = rhs({y[0] + hs * (a31 * k1[0] + a32 * k2[0]), y[1] + hs * (a31 * k1[1] + a32 * k2[1]),
              y[2] + hs * (a31 * k1[2] + a32 * k2[2])});
    k4 = rhs({y[0] + hs * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]),
              y[1] + hs * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1]),
              y[2] + hs * (a41 * k1[2] + a42 * k2[2] + a43 * k3[2])});
    k5 = rhs({y[0] + hs * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
              y[1] + hs * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1]),
              y[2] + hs * (a51 * k1[2] + a52 * k2[2] + a53 * k3[2] + a54 * k4[2])});
    k6 = rhs({y[0] + hs * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] + a64 * k4[0] + a65 * k5[0]),
              y[1] + hs * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] + a64 * k4[1] + a65 * k5[1]),
              y[2] + hs * (a61 * k1[2] + a62 * k2[2] + a63 * k3[2] + a64 * k4[2] + a65 * k5[2])});

    Vec ynew;
    for (int i = 0; i < 3; ++i)
      ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    k7 = rhs(ynew);  // FSAL stage

    double err = 0.0;
    bool trial_finite = finite(ynew) && finite(k7);
    if (trial_finite) {
      for (int i = 0; i < 3; ++i) {
        const double ei =
            hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = atol + settings.rtol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
        err += (ei / sc) * (ei / sc);
      }
      err = std::sqrt(err / 3.0);
      trial_finite = std::isfinite(err);
    }

    if (!trial_finite) {
      ++traj.diagnostics.rejected;
      h = hs * kShrinkClamp;
      continue;
    }

    if (err > 1.0) {
      ++traj.diagnostics.rejected;
      h = hs * std::max(kShrinkClamp, kSafety * std::pow(err, -0.2));
      continue;
    }

    // Error accepted; negative excursions beyond -atol still reject the step.
    if (ynew[0] < -atol || ynew[1] < -atol || ynew[2] < -atol) {
      ++traj.diagnostics.rejected;
      h = 0.5 * hs;
      continue;
    }

    const double t_new = t + hs;

    // Interpolate output samples inside (t, t_new].
    if (settings.record_every > 0.0) {
      Vec cont2, cont3, cont4, cont5;
      for (int i = 0; i < 3; ++i) {
        const double dy = ynew[i] - y[i];
        cont2[i] = dy;
        cont3[i] = hs * k1[i] - dy;
        cont4[i] = dy - hs * k7[i] - cont3[i];
        cont5[i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                         d7 * k7[i]);
      }
      while (true) {
        const double ts = static_cast<double>(next_sample) * settings.record_every;
        if (ts > t_new + grid_eps || ts > t_end + grid_eps) break;
        const double theta = std::clamp((ts - t) / hs, 0.0, 1.0);
        Vec u;
        for (int i = 0; i < 3; ++i)
          u[i] = y[i] + theta * (cont2[i] +
                                 (1.0 - theta) *
                                     (cont3[i] + theta * (cont4[i] + (1.0 - theta) * cont5[i])));
        record(ts, u);
        ++next_sample;
      }
    }

    // Clamp discretization-noise negatives onto the boundary.
    bool any_clamped = false;
    for (int i = 0; i < 3; ++i) {
      if (ynew[i] < 0.0) {
        ynew[i] = 0.0;
        ++traj.diagnostics.clamp_events;
        any_clamped = true;
      }
    }

    t = t_new;
    y = ynew;
    ++traj.diagnostics.accepted;
    if (u_frozen) ++traj.diagnostics.frozen_steps;

    if (settings.record_every == 0.0 && t < t_end - grid_eps) record(t, y);

    // Absorbing boundary for U: hold at zero while the field points outward,
    // release as soon as beta S - b P turns nonnegative.
    if (!u_frozen && y[2] == 0.0 && unfrozen_dU(y) < 0.0) {
      u_frozen = true;
      have_k1 = false;
    } else if (u_frozen && unfrozen_dU(y) >= 0.0) {
      u_frozen = false;
      have_k1 = false;
    } else if (any_clamped) {
      // FSAL stage was evaluated at the pre-clamp state.
      have_k1 = false;
    } else {
      k1 = k7;
      have_k1 = true;
    }

    const double fac = err == 0.0 ? kGrowClamp
                                  : std::clamp(kSafety * std::pow(err, -0.2), kShrinkClamp,
                                               kGrowClamp);
    h = std::min(hs * fac, settings.dt_max);
  }

  if (traj.samples.empty() || traj.samples.back().t < t_end - grid_eps) record(t_end, y);
  return traj;
}

BoundCheck verify_bound(const Trajectory& traj, const BoundednessBound& bb) {
  BoundCheck chk;
  chk.max_ratio = 0.0;
  for (const auto& s : traj.samples) {
    const double ratio = s.total / bb.bound;
    if (ratio > chk.max_ratio) {
      chk.max_ratio = ratio;
      chk.worst_t = s.t;
    }
  }
  chk.pass = chk.max_ratio <= 1.0 + kBoundRelSlack;
  return chk;
}

}  // namespace ecoepi
