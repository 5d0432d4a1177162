#include "ecoepi/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ecoepi/output.hpp"

namespace ecoepi {

namespace {

std::string fixed3(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const int n = std::snprintf(buf, sizeof(buf), "%.3f", v);
  return std::string(buf, buf + n);
}

std::string point_str(const State& x, bool classical) {
  std::ostringstream os;
  os << "(" << fixed3(x.P) << ", " << fixed3(x.S);
  if (!classical) os << ", " << fixed3(x.U);
  os << ")";
  return os.str();
}

void kv(std::ostringstream& os, const std::string& key, double v) {
  os << key << " = " << format_double17(v) << "\n";
}

void kv_point(std::ostringstream& os, const std::string& prefix, const State& x) {
  kv(os, prefix + ".P", x.P);
  kv(os, prefix + ".S", x.S);
  kv(os, prefix + ".U", x.U);
}

void kv_eigs(std::ostringstream& os, const std::string& prefix, const StabilityVerdict& v) {
  for (std::size_t i = 0; i < v.dim; ++i) {
    kv(os, prefix + ".eig" + std::to_string(i + 1) + ".re", v.eigenvalues[i].real());
    kv(os, prefix + ".eig" + std::to_string(i + 1) + ".im", v.eigenvalues[i].imag());
  }
  os << prefix << ".classification = " << classification_name(v.classification) << "\n";
}

void kv_rh(std::ostringstream& os, const std::string& prefix, const RhCoefficients& rh) {
  kv(os, prefix + ".a0", rh.a0);
  kv(os, prefix + ".a1", rh.a1);
  kv(os, prefix + ".a2", rh.a2);
  kv(os, prefix + ".a2a1_minus_a0", rh.combination);
}

std::string eig_str(const StabilityVerdict& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.dim; ++i) {
    if (i) os << ", ";
    const auto& e = v.eigenvalues[i];
    char buf[96];
    if (std::fabs(e.imag()) > 0.0)
      std::snprintf(buf, sizeof(buf), "%.6g %c %.6gi", e.real(), e.imag() < 0 ? '-' : '+',
                    std::fabs(e.imag()));
    else
      std::snprintf(buf, sizeof(buf), "%.6g", e.real());
    os << buf;
  }
  return os.str();
}

void describe_conditions(std::ostringstream& os, const std::vector<FeasibilityCondition>& conds) {
  for (const auto& c : conds) {
    os << "  " << c.id << ": " << format_double(c.lhs) << (c.strict ? " > " : " >= ")
       << format_double(c.rhs) << "  ->  " << (c.satisfied ? "satisfied" : "violated");
    if (c.marginal) os << " (marginal)";
    os << "\n";
  }
}

void e1_threshold_lines(std::ostringstream& os, const ParameterSet& params,
                        const PredatorFreeStabilityReport& rep) {
  os << "predator-free stability threshold (m_ddagger, a*S1 + b*U1) = "
     << fixed3(rep.m_ddagger) << "\n";
  if (params.variant == Variant::Toxic) {
    os << "predator-free stability threshold (Jacobian, a*S1 - b*U1): "
       << fixed3(rep.jacobian_threshold) << "\n";
  }
  if (rep.discrepant) {
    os << "DISCREPANCY: the m_ddagger condition classifies E1 as "
       << classification_name(rep.m_ddagger_verdict) << " at m = " << format_double(params.m)
       << ", but the Jacobian entry -m + a*S1 - b*U1 classifies it as "
       << classification_name(rep.jacobian_verdict)
       << "; the Jacobian verdict is authoritative here.\n";
  }
}

}  // namespace

std::string analysis_report(const ParameterSet& params, bool with_stability) {
  const bool classical = params.variant == Variant::Classical;
  std::ostringstream os;

  os << "variant: " << variant_name(params.variant) << "\n";
  os << "params: m=" << format_double(params.m) << " a=" << format_double(params.a);
  if (!classical) os << " b=" << format_double(params.b);
  os << " r=" << format_double(params.r) << " K=" << format_double(params.K);
  if (!classical)
    os << " beta=" << format_double(params.beta) << " mu=" << format_double(params.mu);
  os << "\n\n";

  const Equilibrium e0 = equilibrium_origin(params);
  const Equilibrium e1 = equilibrium_predator_free(params);
  const Thresholds thr = thresholds(params);
  const auto e1rep = predator_free_stability_report(params);

  os << "equilibria:\n";
  os << "  E0 = " << point_str(e0.point, classical) << "  [feasible]\n";
  os << "  E1 = " << point_str(e1.point, classical) << "  [feasible]\n";

  bool have_coex = false;
  Equilibrium coex;
  std::string coex_error;
  try {
    coex = equilibrium_coexistence(params);
    have_coex = true;
    os << "  E~* = " << point_str(coex.point, classical) << "  ["
       << (coex.feasible ? "feasible" : "infeasible") << (coex.marginal ? ", marginal" : "")
       << "]\n";
  } catch (const DegenerateDenominator& e) {
    coex_error = e.what();
    os << "  E~* : " << coex_error << "\n";
  }

  os << "\nfeasibility conditions:\n";
  const auto conds = feasibility_report(params);
  describe_conditions(os, conds);

  os << "\nthresholds:\n";
  os << "  m_star = " << fixed3(thr.m_star) << "\n";
  os << "  m_dagger = " << fixed3(thr.m_dagger) << "\n";
  os << "  m_ddagger = " << fixed3(thr.m_ddagger) << "\n";
  e1_threshold_lines(os, params, e1rep);

  std::optional<StabilityVerdict> v0, v1, vc;
  if (with_stability) {
    v0 = classify_equilibrium(params, e0);
    v1 = classify_equilibrium(params, e1);
    os << "\nstability:\n";
    os << "  E0: " << classification_name(v0->classification) << ", eigenvalues " << eig_str(*v0)
       << "\n";
    os << "  E1: " << classification_name(v1->classification) << ", eigenvalues " << eig_str(*v1)
       << "\n";
    if (have_coex) {
      vc = classify_equilibrium(params, coex);
      os << "  E~*: " << classification_name(vc->classification) << ", eigenvalues "
         << eig_str(*vc) << "\n";
      if (vc->rh) {
        os << "  Routh-Hurwitz at E~*: a0=" << format_double(vc->rh->a0)
           << " a1=" << format_double(vc->rh->a1) << " a2=" << format_double(vc->rh->a2)
           << " a2*a1-a0=" << format_double(vc->rh->combination) << "\n";
        os << "  hopf_possible = " << (vc->hopf_possible ? "true" : "false") << "\n";
      }
    }
    try {
      const auto tc = locate_transcritical(params, thr.m_ddagger * 1e-3,
                                           std::max(thr.m_ddagger, thr.m_star) * 1e3);
      os << "  transcritical exchange at m = " << fixed3(tc.m_tc)
         << " (verified; coalescence distance " << format_double(tc.coalescence_distance)
         << ")\n";
    } catch (const NoExchange& e) {
      os << "  transcritical exchange: not verified (" << e.what() << ")\n";
    }
  }

  // machine-readable block
  os << "\n[report]\n";
  os << "variant = " << variant_name(params.variant) << "\n";
  kv_point(os, "E0", e0.point);
  kv_point(os, "E1", e1.point);
  if (have_coex) {
    kv_point(os, "coexistence", coex.point);
    os << "coexistence.feasible = " << (coex.feasible ? 1 : 0) << "\n";
    os << "coexistence.marginal = " << (coex.marginal ? 1 : 0) << "\n";
    kv(os, "coexistence.residual", coex.residual);
  } else {
    os << "coexistence.degenerate = 1\n";
  }
  for (const auto& c : conds) {
    kv(os, "feasibility." + c.id + ".lhs", c.lhs);
    kv(os, "feasibility." + c.id + ".rhs", c.rhs);
    os << "feasibility." << c.id << ".satisfied = " << (c.satisfied ? 1 : 0) << "\n";
  }
  kv(os, "thresholds.m_star", thr.m_star);
  kv(os, "thresholds.m_dagger", thr.m_dagger);
  kv(os, "thresholds.m_ddagger", thr.m_ddagger);
  kv(os, "thresholds.e1_jacobian", e1rep.jacobian_threshold);
  os << "thresholds.e1_discrepant = " << (e1rep.discrepant ? 1 : 0) << "\n";
  if (with_stability) {
    kv_eigs(os, "E0", *v0);
    kv_eigs(os, "E1", *v1);
    if (vc) {
      kv_eigs(os, "coexistence", *vc);
      if (vc->rh) kv_rh(os, "coexistence.rh", *vc->rh);
    }
  }
  return os.str();
}

std::string figure_report_text(const FigureReport& fig) {
  const ParameterSet& p = fig.params;
  std::ostringstream os;
  os << "figure " << fig.id << " comparison report\n";
  os << "================================\n";
  os << "variant: " << variant_name(p.variant) << "\n";
  os << "params: m=" << format_double(p.m) << " a=" << format_double(p.a)
     << " b=" << format_double(p.b) << " r=" << format_double(p.r) << " K=" << format_double(p.K)
     << " beta=" << format_double(p.beta) << " mu=" << format_double(p.mu) << "\n\n";

  os << "E1 = " << point_str(fig.predator_free.point, false) << ", "
     << classification_name(fig.predator_free_verdict.classification)
     << " (numerical Jacobian)\n";
  os << "E~* = " << point_str(fig.coexistence.point, false) << ", "
     << (fig.coexistence.feasible ? "feasible" : "infeasible") << ", "
     << classification_name(fig.coexistence_verdict.classification) << "\n";
  if (fig.coexistence_verdict.rh) {
    const auto& rh = *fig.coexistence_verdict.rh;
    os << "Routh-Hurwitz at E~*: a0=" << fixed3(rh.a0) << " a1=" << fixed3(rh.a1)
       << " a2=" << fixed3(rh.a2) << " a2*a1-a0=" << format_double(rh.combination) << "\n";
  }
  e1_threshold_lines(os, p, fig.e1_report);

  const auto& samples = fig.trajectory.samples;
  os << "\ntrajectory: t_end=" << format_double(fig.trajectory.settings.t_end) << ", "
     << samples.size() << " samples, " << fig.trajectory.diagnostics.accepted << " accepted / "
     << fig.trajectory.diagnostics.rejected << " rejected steps, "
     << fig.trajectory.diagnostics.clamp_events << " clamp events\n";
  const State& xf = samples.back().x;
  os << "final state = (" << format_double(xf.P) << ", " << format_double(xf.S) << ", "
     << format_double(xf.U) << ")\n";
  os << "max |final - E~*| / |E~*| = " << format_double(fig.final_rel_distance_to_coexistence)
     << "\n";
  if (fig.trajectory.monitor) {
    const auto chk = verify_bound(fig.trajectory, *fig.trajectory.monitor);
    os << "boundedness: T(t) <= " << format_double(fig.trajectory.monitor->bound)
       << " holds: " << (chk.pass ? "yes" : "NO") << " (max ratio "
       << format_double(chk.max_ratio) << ")\n";
  }
  os << "P(final)/P(0) = " << format_double(fig.predator_final_over_initial) << "\n";
  os << "S,U within +-10% of (S1, U1) over the last 20% of the horizon: "
     << (fig.su_within_band ? "yes" : "no") << "\n";

  if (fig.oscillation) {
    os << "\noscillation diagnostics (second half of horizon):\n";
    const char* names[3] = {"P", "S", "U"};
    for (int c = 0; c < 3; ++c) {
      const auto& comp = fig.oscillation->components[c];
      os << "  " << names[c] << ": ";
      if (!comp.oscillatory) {
        os << "non-oscillatory (" << comp.peak_count << " peaks)\n";
        continue;
      }
      os << comp.peak_count << " peaks, mean amplitude " << format_double(comp.mean_amplitude)
         << ", trend ratio " << format_double(comp.trend_ratio) << " ("
         << (comp.trend_ratio < 1.0 ? "decaying" : "not decaying") << "), center "
         << format_double(comp.center) << "\n";
    }
  }

  // machine-readable block
  os << "\n[report]\n";
  os << "figure = " << fig.id << "\n";
  kv_point(os, "E1", fig.predator_free.point);
  kv_point(os, "coexistence", fig.coexistence.point);
  os << "coexistence.feasible = " << (fig.coexistence.feasible ? 1 : 0) << "\n";
  if (fig.coexistence_verdict.rh) kv_rh(os, "coexistence.rh", *fig.coexistence_verdict.rh);
  kv(os, "thresholds.m_ddagger", fig.thr.m_ddagger);
  kv(os, "thresholds.e1_jacobian", fig.e1_report.jacobian_threshold);
  os << "thresholds.e1_discrepant = " << (fig.e1_report.discrepant ? 1 : 0) << "\n";
  kv(os, "final.P", xf.P);
  kv(os, "final.S", xf.S);
  kv(os, "final.U", xf.U);
  kv(os, "final.rel_distance_to_coexistence", fig.final_rel_distance_to_coexistence);
  os << "su_within_band = " << (fig.su_within_band ? 1 : 0) << "\n";
  if (fig.oscillation) {
    const char* names[3] = {"P", "S", "U"};
    for (int c = 0; c < 3; ++c) {
      const auto& comp = fig.oscillation->components[c];
      os << "oscillation." << names[c] << ".oscillatory = " << (comp.oscillatory ? 1 : 0) << "\n";
      if (comp.oscillatory) {
        kv(os, std::string("oscillation.") + names[c] + ".trend_ratio", comp.trend_ratio);
        kv(os, std::string("oscillation.") + names[c] + ".mean_amplitude", comp.mean_amplitude);
      }
    }
  }
  return os.str();
}

}  // namespace ecoepi
