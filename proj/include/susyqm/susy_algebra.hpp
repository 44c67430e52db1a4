#pragma once

#include <Eigen/Core>
#include <complex>
#include <string>

#include "susyqm/calculus.hpp"
#include "susyqm/grid.hpp"
#include "susyqm/scattering.hpp"
#include "susyqm/superpotential.hpp"
#include "susyqm/units.hpp"

namespace susyqm {

template <typename Scalar>
struct OperatorApplication {
  SampleVector<Scalar> input;
  SampleVector<Scalar> output;
  /// Factor that rescales `output` to a chosen normalization; 1 when none was applied.
  Scalar normalization{1};
};

/// A psi = kappa psi' + W psi, derivative by fourth-order differences that do
/// not straddle jumps of W.
template <typename Scalar>
OperatorApplication<Scalar> apply_a(const Superpotential& w, const SampleVector<Scalar>& psi,
                                    const Grid& grid, const UnitSystem& units);

/// A^dagger psi = -kappa psi' + W psi.
template <typename Scalar>
OperatorApplication<Scalar> apply_a_dagger(const Superpotential& w, const SampleVector<Scalar>& psi,
                                           const Grid& grid, const UnitSystem& units);

/// Coefficient of the incident wave exp(i k x) in psi near the left edge, where
/// the potential has settled to `v_left`. Uses the same discrete plane waves as
/// the scattering solver.
Complex incident_amplitude(const Eigen::VectorXcd& psi, const Grid& grid, const UnitSystem& units,
                           double energy, double v_left);

/// Normalized exp(-(1/kappa) int_0^x W ds) on the grid (positive everywhere).
Eigen::VectorXd zero_mode(const Superpotential& w, const Grid& grid, const UnitSystem& units);

struct AmplitudeRelationReport {
  double energy = 0.0;
  Complex r1, r2, t1, t2;
  double k = 0.0;
  double k_prime = 0.0;
  bool evanescent = false;
  double w_minus = 0.0;
  double w_plus = 0.0;
  /// |r1 - r2 (W- + i kappa k)/(W- - i kappa k)| / max(|r1|, eps)
  double residual_r = 0.0;
  /// |t1 - t2 (W+ - i kappa k')/(W- - i kappa k)| / max(|t1|, eps)
  double residual_t = 0.0;
  /// N in phi1 = N A^dagger phi2, extracted from the incident-wave coefficient.
  Complex normalization;
  /// 1 / (W- - i kappa k), the value the asymptotic algebra predicts for N.
  Complex predicted_normalization;
  /// max |N A^dagger phi2 - phi1| / max |phi1| over the grid.
  double map_residual = 0.0;
  bool include_deltas = false;
  double tail_residual = 0.0;
  std::string normalization_rule;
};

inline constexpr double kResidualFloor = 1e-12;

/// Solves both partners independently at one energy and measures how well the
/// SUSY relations between their amplitudes hold. Nothing from those relations
/// enters the solves.
AmplitudeRelationReport verify_amplitude_relations(const Superpotential& w, double energy,
                                                   const Grid& grid, const UnitSystem& units,
                                                   bool include_deltas,
                                                   double match_tol = kDefaultMatchTol);

}  // namespace susyqm
