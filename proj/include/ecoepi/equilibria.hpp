#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ecoepi/params.hpp"

namespace ecoepi {

// Feasibility inequalities holding with equality within this relative
// tolerance are reported satisfied with marginal = true, so parameter sets
// sitting exactly on a transcritical boundary stay representable.
inline constexpr double kFeasibilityRelTol = 1e-9;

// Coexistence closed forms lose all accuracy when their common denominator
// vanishes below this fraction of a^2 K mu; callers must perturb parameters.
inline constexpr double kDegenerateDenomRelTol = 1e-12;

// Every reported equilibrium annihilates the vector field to this relative
// residual.
inline constexpr double kResidualRelTol = 1e-10;

enum class EquilibriumLabel { Origin, PredatorFree, Coexistence };

const char* equilibrium_label_name(EquilibriumLabel label);

struct Equilibrium {
  State point;
  EquilibriumLabel label = EquilibriumLabel::Origin;
  bool feasible = true;
  bool marginal = false;  // a feasibility inequality is an equality within tolerance
  double residual = 0.0;  // max-norm of vector_field at point
};

// One evaluated feasibility inequality, stated as lhs >= rhs (or lhs > rhs
// when strict).
struct FeasibilityCondition {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  bool strict = false;
  bool satisfied = false;
  bool marginal = false;
};

class DegenerateDenominator : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Total extinction; always feasible.
Equilibrium equilibrium_origin(const ParameterSet& params);

// Predator-free state with endemic disease:
//   S1 = r K mu / (beta^2 K + r mu),  U1 = r K beta / (beta^2 K + r mu);
// the classical variant returns (0, K). Always feasible.
Equilibrium equilibrium_predator_free(const ParameterSet& params);

// Closed-form coexistence point of the variant, with the feasibility verdict
// evaluated from the variant's sign conditions. Throws DegenerateDenominator
// when the closed form's denominator vanishes (possible only for the toxic
// variant).
Equilibrium equilibrium_coexistence(const ParameterSet& params);

// Every feasibility inequality of the variant, each side evaluated
// numerically. The overall verdict (conjunction for classical/harmless/
// avoided, disjunction of the two four-condition sets for toxic) matches
// equilibrium_coexistence exactly.
std::vector<FeasibilityCondition> feasibility_report(const ParameterSet& params);

}  // namespace ecoepi
