#include "ecoepi/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ecoepi {

SweepResult sweep_mortality(const ParameterSet& params, double m_from, double m_to,
                            std::size_t steps) {
  if (!(m_from > 0.0 && m_to > m_from)) throw std::invalid_argument("need 0 < m_from < m_to");
  if (steps < 2) throw std::invalid_argument("need at least 2 grid points");

  SweepResult result;
  result.grid_spacing = (m_to - m_from) / static_cast<double>(steps - 1);
  result.points.reserve(steps);

  ParameterSet p = params;
  for (std::size_t i = 0; i < steps; ++i) {
    SweepPoint pt;
    pt.m = m_from + static_cast<double>(i) * result.grid_spacing;
    p.m = pt.m;
    pt.predator_free = equilibrium_predator_free(p);
    pt.predator_free_class = classify_equilibrium(p, pt.predator_free).classification;
    try {
      pt.coexistence = equilibrium_coexistence(p);
      pt.coexistence_class = classify_equilibrium(p, *pt.coexistence).classification;
    } catch (const DegenerateDenominator&) {
      // leave the coexistence record empty for this grid point
    }
    result.points.push_back(std::move(pt));
  }

  // The predator-free point turns stable as m grows past the exchange.
  for (std::size_t i = 0; i + 1 < result.points.size(); ++i) {
    const bool below = result.points[i].predator_free_class != Classification::Stable;
    const bool above = result.points[i + 1].predator_free_class == Classification::Stable;
    if (below && above) {
      result.detected_transcritical = 0.5 * (result.points[i].m + result.points[i + 1].m);
      break;
    }
  }
  return result;
}

namespace {

struct Extremum {
  double t = 0.0;
  double value = 0.0;
  bool is_max = false;
};

// Alternating local extrema by direction reversal; a reversal counts only
// once the signal retreats more than `hysteresis` from the running candidate.
std::vector<Extremum> detect_extrema(const std::vector<double>& t, const std::vector<double>& y,
                                     double hysteresis) {
  std::vector<Extremum> out;
  if (y.size() < 3) return out;

  int dir = 0;  // +1 rising, -1 falling, 0 undetermined
  double cand_v = y[0], cand_t = t[0];
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (dir == 0) {
      if (y[i] > cand_v + hysteresis) dir = 1;
      else if (y[i] < cand_v - hysteresis) dir = -1;
      if (y[i] > cand_v) { cand_v = y[i]; cand_t = t[i]; }
      else if (y[i] < cand_v && dir == -1) { cand_v = y[i]; cand_t = t[i]; }
      continue;
    }
    if (dir > 0) {
      if (y[i] >= cand_v) {
        cand_v = y[i];
        cand_t = t[i];
      } else if (y[i] < cand_v - hysteresis) {
        out.push_back({cand_t, cand_v, true});
        dir = -1;
        cand_v = y[i];
        cand_t = t[i];
      }
    } else {
      if (y[i] <= cand_v) {
        cand_v = y[i];
        cand_t = t[i];
      } else if (y[i] > cand_v + hysteresis) {
        out.push_back({cand_t, cand_v, false});
        dir = 1;
        cand_v = y[i];
        cand_t = t[i];
      }
    }
  }
  return out;
}

ComponentOscillation analyze_component(const std::vector<double>& t, const std::vector<double>& y,
                                       double hysteresis) {
  ComponentOscillation comp;
  const auto extrema = detect_extrema(t, y, hysteresis);
  for (const auto& e : extrema)
    if (e.is_max) {
      comp.peaks.emplace_back(e.t, e.value);
    }
  comp.peak_count = comp.peaks.size();
  comp.oscillatory = comp.peak_count >= 4;

  if (!comp.oscillatory) {
    comp.center = y.empty() ? 0.0 : std::accumulate(y.begin(), y.end(), 0.0) / y.size();
    comp.trend_ratio = std::numeric_limits<double>::quiet_NaN();
    return comp;
  }

  std::vector<double> amp, amp_t, mid;
  for (std::size_t k = 0; k + 1 < extrema.size(); ++k) {
    amp.push_back(0.5 * std::fabs(extrema[k + 1].value - extrema[k].value));
    amp_t.push_back(0.5 * (extrema[k].t + extrema[k + 1].t));
    mid.push_back(0.5 * (extrema[k].value + extrema[k + 1].value));
  }
  comp.mean_amplitude = std::accumulate(amp.begin(), amp.end(), 0.0) / amp.size();
  comp.center = std::accumulate(mid.begin(), mid.end(), 0.0) / mid.size();

  const std::size_t w = std::max<std::size_t>(1, amp.size() / 4);
  auto window_mean = [&](std::size_t from) {
    double s = 0.0, st = 0.0;
    for (std::size_t k = from; k < from + w; ++k) {
      s += amp[k];
      st += amp_t[k];
    }
    return std::pair<double, double>(s / w, st / w);
  };
  const auto [first_amp, first_t] = window_mean(0);
  const auto [last_amp, last_t] = window_mean(amp.size() - w);
  comp.first_window_time = first_t;
  comp.last_window_time = last_t;
  comp.trend_ratio = first_amp > 0.0 ? last_amp / first_amp
                                     : std::numeric_limits<double>::quiet_NaN();
  return comp;
}

}  // namespace

OscillationDiagnostics oscillation_diagnostics(const Trajectory& traj) {
  if (traj.samples.size() < 100)
    throw std::invalid_argument("oscillation diagnostics need at least 100 samples");

  OscillationDiagnostics diag;
  diag.hysteresis = traj.settings.atol;

  const double t0 = traj.samples.front().t;
  const double t1 = traj.samples.back().t;
  const double t_mid = t0 + 0.5 * (t1 - t0);

  std::vector<double> t;
  std::array<std::vector<double>, 3> y;
  for (const auto& s : traj.samples) {
    if (s.t < t_mid) continue;
    t.push_back(s.t);
    y[0].push_back(s.x.P);
    y[1].push_back(s.x.S);
    y[2].push_back(s.x.U);
  }
  for (int c = 0; c < 3; ++c) diag.components[c] = analyze_component(t, y[c], diag.hysteresis);
  return diag;
}

FigureReport reproduce_figure(int id, const ParameterSet& params, const State& x0,
                              const IntegrationSettings& settings) {
  if (id < 1 || id > 3) throw std::invalid_argument("figure id must be 1, 2 or 3");

  FigureReport fig;
  fig.id = id;
  fig.params = params;
  fig.predator_free = equilibrium_predator_free(params);
  fig.predator_free_verdict = classify_equilibrium(params, fig.predator_free);
  fig.coexistence = equilibrium_coexistence(params);
  fig.coexistence_verdict = classify_equilibrium(params, fig.coexistence);
  fig.thr = thresholds(params);
  fig.e1_report = predator_free_stability_report(params);

  fig.trajectory = integrate(params, x0, settings, boundedness_bound(params, x0));
  if (fig.trajectory.samples.size() >= 100)
    fig.oscillation = oscillation_diagnostics(fig.trajectory);

  const State& xf = fig.trajectory.samples.back().x;
  const State& coex = fig.coexistence.point;
  fig.final_offset_from_coexistence = {std::fabs(xf.P - coex.P), std::fabs(xf.S - coex.S),
                                       std::fabs(xf.U - coex.U)};
  double rel = 0.0;
  rel = std::max(rel, fig.final_offset_from_coexistence.P / std::max(std::fabs(coex.P), 1e-300));
  rel = std::max(rel, fig.final_offset_from_coexistence.S / std::max(std::fabs(coex.S), 1e-300));
  rel = std::max(rel, fig.final_offset_from_coexistence.U / std::max(std::fabs(coex.U), 1e-300));
  fig.final_rel_distance_to_coexistence = rel;

  fig.predator_final_over_initial = x0.P > 0.0 ? xf.P / x0.P : 0.0;

  const double S1 = fig.predator_free.point.S;
  const double U1 = fig.predator_free.point.U;
  bool in_band = true;
  const double t_tail = fig.trajectory.samples.back().t * 0.8;
  for (const auto& s : fig.trajectory.samples) {
    if (s.t < t_tail) continue;
    if (std::fabs(s.x.S - S1) > 0.1 * S1 || std::fabs(s.x.U - U1) > 0.1 * U1) {
      in_band = false;
      break;
    }
  }
  fig.su_within_band = in_band;
  return fig;
}

}  // namespace ecoepi
