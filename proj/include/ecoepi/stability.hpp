#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>

#include "ecoepi/equilibria.hpp"
#include "ecoepi/params.hpp"

namespace ecoepi {

// Eigenvalue real parts within +-kEigenMarginalRel * max|lambda| of zero
// classify as Marginal; a transcritical point carries an exact zero
// eigenvalue and must not flip-flop between verdicts.
inline constexpr double kEigenMarginalRel = 1e-9;

// Relative offset used to probe both sides of a transcritical threshold.
inline constexpr double kTranscriticalProbe = 1e-3;

// Relative distance within which the coexistence branch must coalesce with
// the predator-free point at the threshold.
inline constexpr double kCoalescenceRelTol = 1e-6;

enum class Classification { Stable, Unstable, Marginal };

const char* classification_name(Classification c);

// Coefficients of the monic characteristic cubic
// lambda^3 + a2 lambda^2 + a1 lambda + a0, plus the Routh-Hurwitz
// combination a2 a1 - a0. All four strictly positive <=> every root has
// negative real part.
struct RhCoefficients {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double combination = 0.0;  // a2 * a1 - a0
};

struct StabilityVerdict {
  std::size_t dim = 3;
  std::array<std::complex<double>, 3> eigenvalues{};  // first dim entries used
  std::optional<RhCoefficients> rh;                   // coexistence points only
  Classification classification = Classification::Marginal;
  // True when a2 > 0 and a0 > 0 while the combination a2 a1 - a0 is zero or
  // negative within the marginal band, i.e. a complex pair sits on or past
  // the imaginary axis while the real root stays stable.
  bool hopf_possible = false;
};

// Predator-mortality thresholds governing the transcritical exchange between
// the predator-free point and coexistence:
//   m_star    = a K                                (classical, disease-free)
//   m_dagger  = a K r mu / (K beta^2 + r mu)       (avoided; equals a S1)
//   m_ddagger = a S1 + b U1
struct Thresholds {
  double m_star = 0.0;
  double m_dagger = 0.0;
  double m_ddagger = 0.0;
};

// The toxic variant's Jacobian entry (1,1) at the predator-free point is
// -m + a S1 - b U1, so the predator-growth threshold it implies is
// a S1 - b U1, while m_ddagger = a S1 + b U1 carries the harmless-variant
// sign of the contact term. Both are reported; classification always follows
// the numerical Jacobian.
struct PredatorFreeStabilityReport {
  double m_ddagger = 0.0;           // a S1 + b U1
  double jacobian_threshold = 0.0;  // a S1 + sigma b U1
  Classification m_ddagger_verdict = Classification::Marginal;
  Classification jacobian_verdict = Classification::Marginal;
  bool discrepant = false;  // verdicts differ at the current m
};

class InconsistentVerdict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoExchange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Analytic Routh-Hurwitz coefficients at a coexistence equilibrium of a
// three-dimensional variant:
//   a2 = (r/K) S* + mu/2
//   harmless: a0 = (1/2)(a^2 mu + b^2 r/K) S* P*
//             a1 = a^2 S* P* + (1/2)[ b^2 P* + ((r/K) mu + beta^2) S* ]
//   toxic:    a0 = (1/2)(a^2 mu - b^2 r/K - 2 a b beta) S* P*
//             a1 = a^2 S* P* + (1/2)[ ((r/K) mu + beta^2) S* - b^2 P* ]
// (avoided = harmless with b = 0). Rejects origin/predator-free points,
// whose spectra factor, and the two-dimensional classical variant.
RhCoefficients rh_coefficients(const ParameterSet& params, const Equilibrium& eq);

// Eigenvalues from the characteristic polynomial of the numerical Jacobian,
// classification by real parts, and for coexistence points a cross-check
// against the Routh-Hurwitz verdict. Throws InconsistentVerdict when the two
// classifications disagree outside the marginal band.
StabilityVerdict classify_equilibrium(const ParameterSet& params, const Equilibrium& eq);

Thresholds thresholds(const ParameterSet& params);

// a S1 + sigma b U1: the threshold the Jacobian actually yields at the
// predator-free point (equals m_ddagger except for the toxic variant).
double predator_free_jacobian_threshold(const ParameterSet& params);

PredatorFreeStabilityReport predator_free_stability_report(const ParameterSet& params);

struct TranscriticalReport {
  double m_tc = 0.0;  // exchange threshold (from the Jacobian)
  Classification predator_free_below = Classification::Marginal;
  Classification predator_free_above = Classification::Marginal;
  Classification coexistence_below = Classification::Marginal;
  bool coexistence_feasible_below = false;
  double coalescence_distance = 0.0;  // ||E*(m_tc) - E1|| / ||E1||
  double m_ddagger = 0.0;             // for reference
  bool differs_from_m_ddagger = false;
};

// Locates the predator-mortality value at which the coexistence branch
// exchanges stability with the predator-free point: the analytic threshold
// is verified by classifying both equilibria at m_tc (1 +- 1e-3) and by the
// coalescence of the two branches at m_tc. Throws NoExchange when the
// threshold lies outside [m_lo, m_hi] or any verification step fails.
TranscriticalReport locate_transcritical(const ParameterSet& params, double m_lo, double m_hi);

}  // namespace ecoepi
