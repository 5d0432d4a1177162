#pragma once

#include <ostream>
#include <string>

#include "ecoepi/dynamics.hpp"
#include "ecoepi/experiments.hpp"

namespace ecoepi {

// Shortest decimal representation that reparses to the same double.
std::string format_double(double v);

// 17 significant digits, locale-independent; used for all CSV numerics.
std::string format_double17(double v);

// Header t,P,S,U,I,T,bound and one row per sample. The bound column repeats
// the analytic ceiling, or nan when no monitor was attached.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

// Header m,label,feasible,classification,P,S,U; two rows per grid point
// (predator_free and coexistence).
void write_sweep_csv(std::ostream& os, const SweepResult& sweep);

// Three stacked time-series panels (P, S, U top to bottom) on a fixed
// 800x900 canvas; the classical variant gets two panels (P, Q).
std::string render_trajectory_svg(const Trajectory& traj, const std::string& title);

}  // namespace ecoepi
