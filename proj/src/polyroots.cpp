#include "ecoepi/polyroots.hpp"

#include <algorithm>
#include <cmath>

namespace ecoepi {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::complex<double> polish_cubic(std::complex<double> x, double a2, double a1, double a0) {
  for (int it = 0; it < 2; ++it) {
    const std::complex<double> f = ((x + a2) * x + a1) * x + a0;
    const std::complex<double> df = (3.0 * x + 2.0 * a2) * x + a1;
    if (std::abs(df) == 0.0) break;
    const std::complex<double> step = f / df;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    x -= step;
  }
  return x;
}

double polish_cubic_real(double x, double a2, double a1, double a0) {
  for (int it = 0; it < 2; ++it) {
    const double f = ((x + a2) * x + a1) * x + a0;
    const double df = (3.0 * x + 2.0 * a2) * x + a1;
    if (df == 0.0 || !std::isfinite(f / df)) break;
    x -= f / df;
  }
  return x;
}

}  // namespace

std::array<std::complex<double>, 2> quadratic_roots(double b, double c) {
  const double disc = b * b - 4.0 * c;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    // q-formula avoids cancellation between -b and the root of the
    // discriminant.
    const double q = -0.5 * (b + std::copysign(s, b));
    const double r0 = q;
    const double r1 = (q != 0.0) ? c / q : -b - q;
    return {std::complex<double>(std::min(r0, r1), 0.0),
            std::complex<double>(std::max(r0, r1), 0.0)};
  }
  const double re = -0.5 * b;
  const double im = 0.5 * std::sqrt(-disc);
  return {std::complex<double>(re, -im), std::complex<double>(re, im)};
}

std::array<std::complex<double>, 3> cubic_roots(double a2, double a1, double a0) {
  // Depress with x = y - a2/3: y^3 + p y + q.
  const double shift = a2 / 3.0;
  const double p = a1 - a2 * shift;
  const double q = a0 - shift * (a1 - 2.0 * shift * shift);

  std::array<std::complex<double>, 3> roots;
  if (p == 0.0 && q == 0.0) {
    roots.fill(std::complex<double>(-shift, 0.0));
    return roots;
  }

  const double quarter_q2 = 0.25 * q * q;
  const double cube_p3 = p * p * p / 27.0;
  const double disc = quarter_q2 + cube_p3;  // < 0: three distinct real roots

  if (disc < 0.0) {
    const double amp = 2.0 * std::sqrt(-p / 3.0);
    double cos3t = -4.0 * q / (amp * amp * amp);
    cos3t = std::clamp(cos3t, -1.0, 1.0);
    const double theta = std::acos(cos3t) / 3.0;
    for (int k = 0; k < 3; ++k) {
      const double y = amp * std::cos(theta - 2.0 * kPi * k / 3.0);
      roots[k] = {polish_cubic_real(y - shift, a2, a1, a0), 0.0};
    }
    std::sort(roots.begin(), roots.end(),
              [](const auto& l, const auto& r) { return l.real() < r.real(); });
    return roots;
  }

  // One real root via Cardano, picking the branch that adds magnitudes.
  const double s = std::sqrt(disc);
  const double w = (q <= 0.0) ? (-0.5 * q + s) : (-0.5 * q - s);
  const double u = std::cbrt(w);
  const double v = (u != 0.0) ? -p / (3.0 * u) : 0.0;
  const double y_real = u + v;
  const double real_root = polish_cubic_real(y_real - shift, a2, a1, a0);

  const double re = -0.5 * y_real - shift;
  const double im = 0.5 * std::sqrt(3.0) * std::fabs(u - v);
  std::complex<double> pair = polish_cubic({re, im}, a2, a1, a0);
  if (std::fabs(pair.imag()) == 0.0) pair = {pair.real(), im};

  roots[0] = {real_root, 0.0};
  roots[1] = std::conj(pair);
  roots[2] = pair;
  return roots;
}

}  // namespace ecoepi
