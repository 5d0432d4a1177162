#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ecoepi/dynamics.hpp"
#include "ecoepi/equilibria.hpp"
#include "ecoepi/stability.hpp"

namespace ecoepi {

struct SweepPoint {
  double m = 0.0;
  Equilibrium predator_free;
  Classification predator_free_class = Classification::Marginal;
  // Absent when the coexistence closed form is degenerate at this point.
  std::optional<Equilibrium> coexistence;
  std::optional<Classification> coexistence_class;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  double grid_spacing = 0.0;
  // Midpoint of the bracket where the predator-free point turns stable;
  // absent when no exchange occurs inside the grid.
  std::optional<double> detected_transcritical;
};

// Evaluates equilibria and classifications on a uniform m-grid and detects
// the stability exchange. Requires 0 < m_from < m_to and steps >= 2.
SweepResult sweep_mortality(const ParameterSet& params, double m_from, double m_to,
                            std::size_t steps);

struct ComponentOscillation {
  bool oscillatory = false;     // at least 4 peaks in the analysis window
  std::size_t peak_count = 0;
  std::vector<std::pair<double, double>> peaks;  // (t, value) local maxima
  double mean_amplitude = 0.0;  // mean of (peak-to-trough)/2 over the window
  double trend_ratio = 0.0;     // last-window / first-window mean amplitude
  double first_window_time = 0.0;
  double last_window_time = 0.0;
  double center = 0.0;
};

struct OscillationDiagnostics {
  std::array<ComponentOscillation, 3> components;
  double hysteresis = 0.0;
};

// Peak detection over the second half of the horizon by sign change of the
// discrete derivative, with the trajectory's atol as hysteresis. Components
// with fewer than 4 peaks are reported non-oscillatory; the trend ratio and
// window times are only meaningful for oscillatory components. Requires at
// least 100 samples.
OscillationDiagnostics oscillation_diagnostics(const Trajectory& traj);

struct FigureReport {
  int id = 0;
  ParameterSet params;
  Equilibrium predator_free;
  StabilityVerdict predator_free_verdict;
  Equilibrium coexistence;
  StabilityVerdict coexistence_verdict;
  Thresholds thr;
  PredatorFreeStabilityReport e1_report;
  Trajectory trajectory;
  std::optional<OscillationDiagnostics> oscillation;
  // Componentwise |x(t_end) - E*| and its maximum relative to E*.
  State final_offset_from_coexistence;
  double final_rel_distance_to_coexistence = 0.0;
  // Collapse/band observations against the predator-free point: P at the end
  // versus its initial value, and whether S and U stay within +-10% of
  // (S1, U1) over the last fifth of the horizon.
  double predator_final_over_initial = 0.0;
  bool su_within_band = false;
};

// Runs one of the three bundled reproduction scenarios (toxic variant) and
// recomputes the quantities the scenario is checked against. The caller
// supplies the scenario definition, normally loaded from the bundled config.
FigureReport reproduce_figure(int id, const ParameterSet& params, const State& x0,
                              const IntegrationSettings& settings);

}  // namespace ecoepi
