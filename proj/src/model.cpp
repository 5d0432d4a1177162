#include "ecoepi/model.hpp"

#include <cmath>
#include <stdexcept>

namespace ecoepi {

namespace {

void check_state(const ParameterSet& params, const State& x) {
  if (!(std::isfinite(x.P) && std::isfinite(x.S) && std::isfinite(x.U)))
    throw std::invalid_argument("state has nonfinite components");
  if (params.variant == Variant::Classical && x.U != 0.0)
    throw std::invalid_argument("classical variant is two-dimensional: U must be 0");
}

}  // namespace

State vector_field(const ParameterSet& params, const State& x) {
  check_state(params, x);
  const double a = params.a, r = params.r, K = params.K, m = params.m;

  if (params.variant == Variant::Classical) {
    const double P = x.P, Q = x.S;
    return {P * (-m + a * Q), Q * (r * (1.0 - Q / K) - a * P), 0.0};
  }

  const double b = params.effective_b();
  const double beta = params.beta, mu = params.mu;
  const double sigma = infected_contact_sign(params.variant);
  const double P = x.P, S = x.S, U = x.U;
  State d;
  d.P = P * (-m + a * S + sigma * b * U);
  d.S = S * (-beta * U + r * (1.0 - S / K) - a * P);
  d.U = 0.5 * (-mu * U + beta * S - b * P);  // b = 0 when predators avoid the herd
  return d;
}

Matrix3 jacobian(const ParameterSet& params, const State& x) {
  check_state(params, x);
  const double a = params.a, r = params.r, K = params.K, m = params.m;
  Matrix3 J;

  if (params.variant == Variant::Classical) {
    const double P = x.P, Q = x.S;
    J.dim = 2;
    J.a[0][0] = -m + a * Q;
    J.a[0][1] = a * P;
    J.a[1][0] = -a * Q;
    J.a[1][1] = r - 2.0 * r / K * Q - a * P;
    return J;
  }

  const double b = params.effective_b();
  const double beta = params.beta, mu = params.mu;
  const double sigma = infected_contact_sign(params.variant);
  const double P = x.P, S = x.S, U = x.U;
  J.dim = 3;
  J.a[0][0] = -m + a * S + sigma * b * U;
  J.a[0][1] = a * P;
  J.a[0][2] = sigma * b * P;
  J.a[1][0] = -a * S;
  J.a[1][1] = -beta * U + r - 2.0 * r / K * S - a * P;
  J.a[1][2] = -beta * S;
  J.a[2][0] = -0.5 * b;
  J.a[2][1] = 0.5 * beta;
  J.a[2][2] = -0.5 * mu;
  return J;
}

InfectedState to_infected_space(const State& x) {
  if (x.U < 0.0) throw std::invalid_argument("U must be nonnegative");
  return {x.P, x.S, x.U * x.U};
}

State from_infected_space(const InfectedState& x) {
  if (x.I < 0.0) throw std::invalid_argument("I must be nonnegative");
  return {x.P, x.S, std::sqrt(x.I)};
}

}  // namespace ecoepi
