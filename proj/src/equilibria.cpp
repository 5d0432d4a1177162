#include "ecoepi/equilibria.hpp"

#include <algorithm>
#include <cmath>

#include "ecoepi/model.hpp"

namespace ecoepi {

const char* equilibrium_label_name(EquilibriumLabel label) {
  switch (label) {
    case EquilibriumLabel::Origin: return "origin";
    case EquilibriumLabel::PredatorFree: return "predator_free";
    case EquilibriumLabel::Coexistence: return "coexistence";
  }
  return "?";
}

namespace {

double field_residual(const ParameterSet& params, const State& x) {
  const State d = vector_field(params, x);
  return std::max({std::fabs(d.P), std::fabs(d.S), std::fabs(d.U)});
}

FeasibilityCondition make_condition(std::string id, double lhs, double rhs, bool strict) {
  FeasibilityCondition c;
  c.id = std::move(id);
  c.lhs = lhs;
  c.rhs = rhs;
  c.strict = strict;
  const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
  const double tol = kFeasibilityRelTol * scale;
  c.marginal = std::fabs(lhs - rhs) <= tol;
  // Equality within tolerance counts as satisfied even for strict
  // inequalities, so boundary (transcritical) parameter sets stay feasible.
  c.satisfied = lhs >= rhs - tol;
  return c;
}

// Predator-free components of the three-dimensional variants.
void predator_free_components(const ParameterSet& p, double& S1, double& U1) {
  const double den = p.beta * p.beta * p.K + p.r * p.mu;
  S1 = p.r * p.K * p.mu / den;
  U1 = p.r * p.K * p.beta / den;
}

// Coexistence numerators/denominator of the variant's closed form. The sign
// pattern of these against the denominator is exactly what the feasibility
// inequalities encode.
struct CoexistenceForm {
  double den = 1.0;
  double numP = 0.0, numS = 0.0, numU = 0.0;
  double den_scale = 1.0;  // magnitude reference for the degeneracy check
};

CoexistenceForm coexistence_form(const ParameterSet& p) {
  const double m = p.m, a = p.a, b = p.effective_b(), r = p.r, K = p.K;
  const double beta = p.beta, mu = p.mu;
  CoexistenceForm f;
  f.den_scale = a * a * K * mu;
  switch (p.variant) {
    case Variant::Classical:
      f.den = a;
      f.numP = r * (1.0 - m / (a * K));
      f.numS = m;
      f.numU = 0.0;
      f.den_scale = a;
      break;
    case Variant::Harmless:
    case Variant::Avoided:
      f.den = a * a * K * mu + b * b * r;
      f.numP = b * K * r * beta + a * K * r * mu - m * r * mu - K * m * beta * beta;
      f.numS = K * (a * m * mu + b * b * r - b * m * beta);
      f.numU = b * m * r + a * K * m * beta - a * b * K * r;
      break;
    case Variant::Toxic:
      f.den = a * a * K * mu - 2.0 * a * b * K * beta - b * b * r;
      f.numP = a * K * r * mu - m * r * mu - K * m * beta * beta - b * K * r * beta;
      f.numS = a * K * m * mu - b * K * m * beta - b * b * K * r;
      f.numU = a * K * m * beta + b * m * r - a * b * K * r;
      break;
  }
  return f;
}

std::vector<FeasibilityCondition> build_report(const ParameterSet& p) {
  const double m = p.m, a = p.a, b = p.effective_b(), r = p.r, K = p.K;
  const double beta = p.beta, mu = p.mu;
  std::vector<FeasibilityCondition> out;
  switch (p.variant) {
    case Variant::Classical:
      out.push_back(make_condition("classical.predator_pos", a * K, m, true));
      break;
    case Variant::Avoided: {
      const double m_dagger = a * K * r * mu / (K * beta * beta + r * mu);
      out.push_back(make_condition("avoided.predator_pos", m_dagger, m, true));
      break;
    }
    case Variant::Harmless:
      out.push_back(make_condition("harmless.predator_nonneg", K * r * (b * beta + a * mu),
                                   m * (r * mu + K * beta * beta), false));
      out.push_back(make_condition("harmless.susceptible_nonneg", a * m * mu + b * b * r,
                                   b * m * beta, false));
      out.push_back(
          make_condition("harmless.infected_pos", m * (b * r + a * K * beta), a * b * K * r, true));
      break;
    case Variant::Toxic:
      out.push_back(make_condition("toxic.set1.denominator", 2.0 * a * b * K * beta + b * b * r,
                                   a * a * K * mu, false));
      out.push_back(make_condition("toxic.set1.predator",
                                   m * r * mu + K * m * beta * beta + b * K * r * beta,
                                   a * K * r * mu, false));
      out.push_back(make_condition("toxic.set1.susceptible", b * K * m * beta + b * b * K * r,
                                   a * K * m * mu, false));
      out.push_back(
          make_condition("toxic.set1.infected", a * b * K * r, b * m * r + a * K * m * beta, false));
      out.push_back(make_condition("toxic.set2.denominator", a * a * K * mu,
                                   2.0 * a * b * K * beta + b * b * r, false));
      out.push_back(make_condition("toxic.set2.predator", a * K * r * mu,
                                   m * r * mu + K * m * beta * beta + b * K * r * beta, false));
      out.push_back(make_condition("toxic.set2.susceptible", a * K * m * mu,
                                   b * K * m * beta + b * b * K * r, false));
      out.push_back(
          make_condition("toxic.set2.infected", b * m * r + a * K * m * beta, a * b * K * r, false));
      break;
  }
  return out;
}

// Overall verdict with exactly the conjunction/disjunction structure of the
// report: all conditions for classical/avoided/harmless, either full
// four-condition set for toxic.
void combine_verdict(const ParameterSet& p, const std::vector<FeasibilityCondition>& conds,
                     const State& point, bool& feasible, bool& marginal) {
  auto all_of_range = [&](std::size_t from, std::size_t to, bool& any_marginal) {
    bool ok = true;
    for (std::size_t i = from; i < to; ++i) {
      ok = ok && conds[i].satisfied;
      any_marginal = any_marginal || conds[i].marginal;
    }
    return ok;
  };

  if (p.variant != Variant::Toxic) {
    bool any_marginal = false;
    feasible = all_of_range(0, conds.size(), any_marginal);
    marginal = feasible && any_marginal;
    return;
  }

  bool m1 = false, m2 = false;
  const bool set1 = all_of_range(0, 4, m1);
  const bool set2 = all_of_range(4, 8, m2);
  feasible = set1 || set2;
  marginal = (set1 && m1) || (set2 && m2);
  if (!feasible) {
    // Both sets can fail with a nonnegative point only at a degeneracy edge;
    // componentwise nonnegativity is what the inequalities encode, so it wins.
    const double scale = std::max({1.0, std::fabs(point.P), std::fabs(point.S), std::fabs(point.U)});
    const double tol = kFeasibilityRelTol * scale;
    if (point.P >= -tol && point.S >= -tol && point.U >= -tol) {
      feasible = true;
      marginal = true;
    }
  }
}

}  // namespace

Equilibrium equilibrium_origin(const ParameterSet& params) {
  Equilibrium eq;
  eq.point = State{0.0, 0.0, 0.0};
  eq.label = EquilibriumLabel::Origin;
  eq.feasible = true;
  eq.marginal = false;
  eq.residual = field_residual(params, eq.point);
  return eq;
}

Equilibrium equilibrium_predator_free(const ParameterSet& params) {
  Equilibrium eq;
  eq.label = EquilibriumLabel::PredatorFree;
  eq.feasible = true;
  eq.marginal = false;
  if (params.variant == Variant::Classical) {
    eq.point = State{0.0, params.K, 0.0};
  } else {
    double S1 = 0.0, U1 = 0.0;
    predator_free_components(params, S1, U1);
    eq.point = State{0.0, S1, U1};
  }
  eq.residual = field_residual(params, eq.point);
  return eq;
}

Equilibrium equilibrium_coexistence(const ParameterSet& params) {
  const CoexistenceForm f = coexistence_form(params);
  if (std::fabs(f.den) <= kDegenerateDenomRelTol * f.den_scale)
    throw DegenerateDenominator(
        "coexistence closed form is degenerate: denominator vanishes for these parameters");

  Equilibrium eq;
  eq.label = EquilibriumLabel::Coexistence;
  eq.point = State{f.numP / f.den, f.numS / f.den, f.numU / f.den};
  if (params.variant == Variant::Classical) eq.point.U = 0.0;

  const auto conds = build_report(params);
  combine_verdict(params, conds, eq.point, eq.feasible, eq.marginal);
  eq.residual = field_residual(params, eq.point);
  return eq;
}

std::vector<FeasibilityCondition> feasibility_report(const ParameterSet& params) {
  return build_report(params);
}

}  // namespace ecoepi
