#pragma once

#include <cstddef>
#include <string>

namespace ecoepi {

// Model variants. The three-dimensional variants differ only in how the
// predator interacts with the infected herd: the contact term in the predator
// equation carries sign +1 (harmless), 0 (avoided) or -1 (toxic), and the
// infected-loss term -b P / 2 is absent when predators avoid the herd.
enum class Variant { Classical, Harmless, Avoided, Toxic };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);  // throws std::invalid_argument

// Sign of the predator's gain/loss from contact with the infected herd
// boundary: +1 harmless, 0 avoided, -1 toxic (0 for classical).
int infected_contact_sign(Variant v);

// Whether predation removes infected individuals (the -b P / 2 term).
bool infected_predation_loss(Variant v);

// 2 for the classical predator-prey system, 3 otherwise.
std::size_t state_dim(Variant v);

struct ParameterSet {
  double m = 1.0;     // predator mortality rate
  double a = 1.0;     // predation rate on healthy prey
  double b = 0.0;     // predation rate on the infected-herd boundary
  double r = 1.0;     // healthy-prey reproduction rate
  double K = 1.0;     // healthy-prey carrying capacity
  double beta = 1.0;  // disease incidence rate
  double mu = 1.0;    // infected mortality rate
  Variant variant = Variant::Harmless;

  // b as the equations use it: forced to zero when predators avoid the herd
  // (and for the classical variant, which has no infected class).
  double effective_b() const;

  // Throws std::invalid_argument on nonpositive rates, negative b, or
  // nonfinite values. The classical variant checks only m, a, r, K.
  void validate() const;

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

// Population state. U is the square root of the infected density, so the
// infected density I = U^2 is always derived, never stored. The classical
// variant stores its prey density Q in S and requires U == 0.
struct State {
  double P = 0.0;
  double S = 0.0;
  double U = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

}  // namespace ecoepi
