#pragma once

#include <array>
#include <cstddef>

#include "ecoepi/params.hpp"

namespace ecoepi {

// Square matrix sized by the variant's state dimension; dim 2 uses the
// top-left block and leaves the rest zero.
struct Matrix3 {
  std::size_t dim = 3;
  std::array<std::array<double, 3>, 3> a{};

  double operator()(std::size_t i, std::size_t j) const { return a[i][j]; }
};

// Right-hand side of the selected variant in singularity-removed coordinates:
//   dP/dt = P (-m + a S + sigma b U)
//   dS/dt = S [ -beta U + r (1 - S/K) - a P ]
//   dU/dt = (1/2) (-mu U + beta S - b P)        [no -b P term when avoided]
// with sigma = +1 (harmless), 0 (avoided), -1 (toxic). The classical variant
// returns the two-dimensional logistic predator-prey field in (P, Q).
// Throws std::invalid_argument on nonfinite input or when a classical state
// carries a nonzero U component.
State vector_field(const ParameterSet& params, const State& x);

// Analytic Jacobian of vector_field at x.
Matrix3 jacobian(const ParameterSet& params, const State& x);

struct InfectedState {
  double P = 0.0;
  double S = 0.0;
  double I = 0.0;
};

// Maps (P, S, U) to (P, S, I = U^2). Rejects negative U.
InfectedState to_infected_space(const State& x);

// Inverse map; rejects negative I.
State from_infected_space(const InfectedState& x);

}  // namespace ecoepi
