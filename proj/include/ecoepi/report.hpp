#pragma once

#include <string>

#include "ecoepi/experiments.hpp"
#include "ecoepi/params.hpp"

namespace ecoepi {

// Human-readable analysis of all equilibria, feasibility sides and
// thresholds, followed by a machine-readable key = value block. With
// with_stability, eigenvalues, Routh-Hurwitz coefficients, classifications
// and the transcritical location are included.
std::string analysis_report(const ParameterSet& params, bool with_stability);

// Comparison report for one reproduction scenario.
std::string figure_report_text(const FigureReport& fig);

}  // namespace ecoepi
