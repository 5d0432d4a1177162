#include "ecoepi/stability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ecoepi/model.hpp"
#include "ecoepi/polyroots.hpp"

namespace ecoepi {

const char* classification_name(Classification c) {
  switch (c) {
    case Classification::Stable: return "stable";
    case Classification::Unstable: return "unstable";
    case Classification::Marginal: return "marginal";
  }
  return "?";
}

namespace {

// Monic characteristic polynomial coefficients of the Jacobian:
// dim 3: lambda^3 + c2 lambda^2 + c1 lambda + c0,
// dim 2: lambda^2 + c1 lambda + c0.
void char_poly(const Matrix3& J, double& c2, double& c1, double& c0) {
  const auto& a = J.a;
  if (J.dim == 2) {
    c2 = 0.0;
    c1 = -(a[0][0] + a[1][1]);
    c0 = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    return;
  }
  const double tr = a[0][0] + a[1][1] + a[2][2];
  const double m01 = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const double m02 = a[0][0] * a[2][2] - a[0][2] * a[2][0];
  const double m12 = a[1][1] * a[2][2] - a[1][2] * a[2][1];
  const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                     a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                     a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  c2 = -tr;
  c1 = m01 + m02 + m12;
  c0 = -det;
}

Classification classify_real_parts(const std::array<std::complex<double>, 3>& eig,
                                   std::size_t dim) {
  double scale = 0.0;
  double max_re = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dim; ++i) {
    scale = std::max(scale, std::abs(eig[i]));
    max_re = std::max(max_re, eig[i].real());
  }
  const double band = kEigenMarginalRel * scale;
  if (max_re < -band) return Classification::Stable;
  if (max_re > band) return Classification::Unstable;
  return Classification::Marginal;
}

// Routh-Hurwitz quantities together with the magnitude of the terms they are
// assembled from; the scales set the marginal bands for sign decisions.
struct RhWithScales {
  RhCoefficients rh;
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, sc = 0.0;
};

RhWithScales rh_with_scales(const ParameterSet& p, const Equilibrium& eq) {
  if (eq.label != EquilibriumLabel::Coexistence)
    throw std::invalid_argument(
        "Routh-Hurwitz coefficients apply to coexistence equilibria only; the origin and "
        "predator-free spectra factor");
  if (p.variant == Variant::Classical)
    throw std::invalid_argument(
        "Routh-Hurwitz cubic coefficients require a three-dimensional variant");

  const double a = p.a, b = p.effective_b(), r = p.r, K = p.K, beta = p.beta, mu = p.mu;
  const double S = eq.point.S, P = eq.point.P;
  const double SP = S * P;
  const double toxic = p.variant == Variant::Toxic ? 1.0 : 0.0;

  RhWithScales out;
  out.rh.a0 = 0.5 * (a * a * mu + (1.0 - 2.0 * toxic) * b * b * r / K - toxic * 2.0 * a * b * beta) * SP;
  out.rh.a2 = (r / K) * S + 0.5 * mu;
  out.rh.a1 = a * a * SP + 0.5 * ((1.0 - 2.0 * toxic) * b * b * P + ((r / K) * mu + beta * beta) * S);
  out.rh.combination = out.rh.a2 * out.rh.a1 - out.rh.a0;

  out.s0 = 0.5 * (a * a * mu + b * b * r / K + 2.0 * a * b * beta) * std::fabs(SP);
  out.s2 = (r / K) * std::fabs(S) + 0.5 * mu;
  out.s1 = a * a * std::fabs(SP) + 0.5 * (b * b * std::fabs(P) + ((r / K) * mu + beta * beta) * std::fabs(S));
  out.sc = out.s2 * std::fabs(out.rh.a1) + out.s1 * std::fabs(out.rh.a2) + out.s0;
  return out;
}

Classification classify_rh(const RhWithScales& rs) {
  const double q[4] = {rs.rh.a0, rs.rh.a1, rs.rh.a2, rs.rh.combination};
  const double band[4] = {kEigenMarginalRel * rs.s0, kEigenMarginalRel * rs.s1,
                          kEigenMarginalRel * rs.s2, kEigenMarginalRel * rs.sc};
  bool all_positive = true;
  bool any_negative = false;
  for (int i = 0; i < 4; ++i) {
    if (!(q[i] > band[i])) all_positive = false;
    if (q[i] < -band[i]) any_negative = true;
  }
  if (all_positive) return Classification::Stable;
  if (any_negative) return Classification::Unstable;
  return Classification::Marginal;
}

double norm_inf(const State& x) {
  return std::max({std::fabs(x.P), std::fabs(x.S), std::fabs(x.U)});
}

}  // namespace

RhCoefficients rh_coefficients(const ParameterSet& params, const Equilibrium& eq) {
  return rh_with_scales(params, eq).rh;
}

StabilityVerdict classify_equilibrium(const ParameterSet& params, const Equilibrium& eq) {
  const Matrix3 J = jacobian(params, eq.point);
  double c2 = 0.0, c1 = 0.0, c0 = 0.0;
  char_poly(J, c2, c1, c0);

  StabilityVerdict v;
  v.dim = J.dim;
  if (J.dim == 2) {
    const auto qr = quadratic_roots(c1, c0);
    v.eigenvalues[0] = qr[0];
    v.eigenvalues[1] = qr[1];
    const double scale = std::max(std::abs(qr[0]), std::abs(qr[1]));
    v.hopf_possible = std::fabs(c1) <= kEigenMarginalRel * scale && c0 > 0.0;
  } else {
    v.eigenvalues = cubic_roots(c2, c1, c0);
  }
  v.classification = classify_real_parts(v.eigenvalues, v.dim);

  if (eq.label == EquilibriumLabel::Coexistence && J.dim == 3) {
    const RhWithScales rs = rh_with_scales(params, eq);
    v.rh = rs.rh;
    const Classification rh_class = classify_rh(rs);
    const bool both_firm = v.classification != Classification::Marginal &&
                           rh_class != Classification::Marginal;
    if (both_firm && rh_class != v.classification) {
      std::ostringstream msg;
      msg << "eigenvalue classification (" << classification_name(v.classification)
          << ") contradicts the Routh-Hurwitz verdict (" << classification_name(rh_class)
          << "); the point is not a coexistence equilibrium of these parameters";
      throw InconsistentVerdict(msg.str());
    }
    v.hopf_possible = rs.rh.a2 > 0.0 && rs.rh.a0 > 0.0 &&
                      rs.rh.combination <= kEigenMarginalRel * rs.sc;
  }
  return v;
}

Thresholds thresholds(const ParameterSet& params) {
  Thresholds t;
  t.m_star = params.a * params.K;
  if (params.variant == Variant::Classical) {
    t.m_dagger = t.m_star;
    t.m_ddagger = t.m_star;
    return t;
  }
  const double den = params.beta * params.beta * params.K + params.r * params.mu;
  const double S1 = params.r * params.K * params.mu / den;
  const double U1 = params.r * params.K * params.beta / den;
  t.m_dagger = params.a * params.K * params.r * params.mu / den;
  t.m_ddagger = params.a * S1 + params.effective_b() * U1;
  return t;
}

double predator_free_jacobian_threshold(const ParameterSet& params) {
  if (params.variant == Variant::Classical) return params.a * params.K;
  const double den = params.beta * params.beta * params.K + params.r * params.mu;
  const double S1 = params.r * params.K * params.mu / den;
  const double U1 = params.r * params.K * params.beta / den;
  return params.a * S1 + infected_contact_sign(params.variant) * params.effective_b() * U1;
}

PredatorFreeStabilityReport predator_free_stability_report(const ParameterSet& params) {
  PredatorFreeStabilityReport rep;
  rep.m_ddagger = thresholds(params).m_ddagger;
  rep.jacobian_threshold = predator_free_jacobian_threshold(params);

  auto verdict = [&](double threshold) {
    const double band = kEigenMarginalRel * std::max(std::fabs(params.m), std::fabs(threshold));
    if (params.m > threshold + band) return Classification::Stable;
    if (params.m < threshold - band) return Classification::Unstable;
    return Classification::Marginal;
  };
  rep.m_ddagger_verdict = verdict(rep.m_ddagger);
  rep.jacobian_verdict = verdict(rep.jacobian_threshold);
  rep.discrepant = rep.m_ddagger_verdict != rep.jacobian_verdict;
  return rep;
}

TranscriticalReport locate_transcritical(const ParameterSet& params, double m_lo, double m_hi) {
  if (!(m_lo > 0.0 && m_hi > m_lo))
    throw std::invalid_argument("scan interval must satisfy 0 < m_lo < m_hi");

  TranscriticalReport rep;
  rep.m_tc = predator_free_jacobian_threshold(params);
  rep.m_ddagger = thresholds(params).m_ddagger;
  rep.differs_from_m_ddagger =
      std::fabs(rep.m_tc - rep.m_ddagger) >
      1e-12 * std::max(std::fabs(rep.m_tc), std::fabs(rep.m_ddagger));

  if (!(rep.m_tc >= m_lo && rep.m_tc <= m_hi)) {
    std::ostringstream msg;
    msg << "exchange threshold m = " << rep.m_tc << " lies outside the scan interval [" << m_lo
        << ", " << m_hi << "]";
    throw NoExchange(msg.str());
  }

  ParameterSet probe = params;

  probe.m = rep.m_tc * (1.0 + kTranscriticalProbe);
  rep.predator_free_above = classify_equilibrium(probe, equilibrium_predator_free(probe)).classification;

  probe.m = rep.m_tc * (1.0 - kTranscriticalProbe);
  rep.predator_free_below = classify_equilibrium(probe, equilibrium_predator_free(probe)).classification;
  const Equilibrium coex_below = equilibrium_coexistence(probe);
  rep.coexistence_feasible_below = coex_below.feasible;
  rep.coexistence_below = classify_equilibrium(probe, coex_below).classification;

  probe.m = rep.m_tc;
  const Equilibrium e1_at = equilibrium_predator_free(probe);
  const Equilibrium coex_at = equilibrium_coexistence(probe);
  const State diff{coex_at.point.P - e1_at.point.P, coex_at.point.S - e1_at.point.S,
                   coex_at.point.U - e1_at.point.U};
  rep.coalescence_distance = norm_inf(diff) / std::max(norm_inf(e1_at.point), 1e-300);

  std::ostringstream why;
  if (rep.predator_free_above != Classification::Stable)
    why << "predator-free point not stable above the threshold; ";
  if (rep.predator_free_below != Classification::Unstable)
    why << "predator-free point not unstable below the threshold; ";
  if (!rep.coexistence_feasible_below) why << "coexistence infeasible below the threshold; ";
  if (rep.coexistence_below != Classification::Stable)
    why << "coexistence not stable below the threshold; ";
  if (rep.coalescence_distance > kCoalescenceRelTol)
    why << "branches fail to coalesce at the threshold; ";
  if (!why.str().empty())
    throw NoExchange("stability exchange not verified at m = " + std::to_string(rep.m_tc) + ": " +
                     why.str());
  return rep;
}

}  // namespace ecoepi
