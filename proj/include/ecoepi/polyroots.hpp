#pragma once

#include <array>
#include <complex>

namespace ecoepi {

// Roots of x^2 + b x + c, exact conjugate pair for negative discriminant.
std::array<std::complex<double>, 2> quadratic_roots(double b, double c);

// Roots of the monic cubic x^3 + a2 x^2 + a1 x + a0. Three distinct real
// roots come from the trigonometric closed form, the mixed case from a
// cancellation-free Cardano step; every root gets a Newton polish on the
// original cubic, which keeps the near-degenerate a2 a1 - a0 ~ 0 regime
// accurate. Complex roots are returned as an exact conjugate pair.
std::array<std::complex<double>, 3> cubic_roots(double a2, double a1, double a0);

}  // namespace ecoepi
