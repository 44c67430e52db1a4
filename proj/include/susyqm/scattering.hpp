#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "susyqm/grid.hpp"
#include "susyqm/partners.hpp"
#include "susyqm/units.hpp"

namespace susyqm {

using Complex = std::complex<double>;

inline constexpr double kDefaultMatchTol = 1e-8;

/// Plane wave of unit amplitude incident from the left on a sampled potential.
struct ScatteringProblem {
  SampledPotential potential;
  double energy = 0.0;
  UnitSystem units{};
  /// Largest accepted |V(edge) - V(+-inf)|.
  double match_tol = kDefaultMatchTol;
};

struct ScatteringSolution {
  double energy = 0.0;
  /// Amplitude of exp(i k' x) on the right (exp(-q x) when the channel is closed).
  Complex t_amp;
  /// Amplitude of exp(-i k x) on the left.
  Complex r_amp;
  double k = 0.0;
  /// k' for an open right channel, otherwise the decay constant q.
  double k_prime = 0.0;
  bool evanescent = false;
  /// (k'/k) |t|^2 when the right channel is open, else 0.
  double transmission_coeff = 0.0;
  double reflection_coeff = 0.0;
  /// |t|^2 without flux normalization.
  double raw_transmission = 0.0;
  double tail_residual = 0.0;
  /// psi on the grid, normalized to unit incident amplitude.
  Eigen::VectorXcd wavefunction;

  /// |R|^2 + (k'/k) |T|^2 - 1 (zero for exact unitarity).
  double unitarity_defect() const { return reflection_coeff + transmission_coeff - 1.0; }
};

/// Numerov from the right edge with a pure outgoing wave, derivative jumps at
/// point interactions, plane-wave decomposition at the left edge. The edge
/// waves use the potential at the edge node, so the box is treated as flat
/// beyond its last samples; k and k' are still those of V(+-inf).
///
/// Throws ChannelClosed if E <= V(-inf) and NonAsymptotic if the potential at
/// the grid edges is further than match_tol from its limits.
ScatteringSolution solve_scattering(const ScatteringProblem& problem);

/// Incidence from the right, computed on the mirrored potential. Amplitudes
/// refer to the mirrored coordinate.
ScatteringSolution solve_scattering_from_right(const ScatteringProblem& problem);

/// One independent solve per energy, results in input order. With workers > 1
/// energies are distributed over threads; results do not depend on the count.
std::vector<ScatteringSolution> sweep_energies(const ScatteringProblem& prototype,
                                               const std::vector<double>& energies,
                                               unsigned workers = 1);

}  // namespace susyqm
