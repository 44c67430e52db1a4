#pragma once

#include <Eigen/Core>
#include <optional>
#include <utility>
#include <vector>

#include "susyqm/grid.hpp"
#include "susyqm/partners.hpp"
#include "susyqm/superpotential.hpp"
#include "susyqm/units.hpp"

namespace susyqm {

struct BoundStateOptions {
  /// Search interval; defaults to (lower bound of H, min(V(-inf), V(+inf))).
  std::optional<std::pair<double, double>> e_window;
  double energy_tol = 1e-12;
  int max_iter = 200;
  /// Levels this close below the continuum threshold are reported as marginal.
  double marginal_band = 1e-8;
};

/// Discrete levels of one Hamiltonian, ascending, with unit-normalized
/// eigenfunctions whose first antinode is positive.
struct BoundStateSpectrum {
  std::vector<double> energies;
  std::vector<Eigen::VectorXd> eigenfunctions;
  std::vector<int> node_counts;
  /// Simpson-rule norm of each returned eigenfunction.
  std::vector<double> norm_checks;
  /// Near-threshold levels left out of `energies`.
  std::vector<double> marginal;
  int potential_tag = 0;
  double window_lo = 0.0;
  double window_hi = 0.0;

  std::size_t size() const { return energies.size(); }
  bool empty() const { return energies.empty(); }
};

/// Shooting with bisection on energy. Levels are bracketed by Sturm node
/// counting of the Numerov solution with psi = 0 at both grid edges, then each
/// eigenfunction is built from two sweeps matched at the outer turning point.
///
/// An empty spectrum is a valid result; NotConverged is raised only when a
/// bisection exhausts max_iter.
BoundStateSpectrum solve_bound_states(const SampledPotential& potential, const UnitSystem& units,
                                      const BoundStateOptions& options = {}, int potential_tag = 0);

struct PairingEntry {
  int n = 0;
  double e2 = 0.0;
  double e1_next = 0.0;
  double energy_diff = 0.0;
  /// L2 distance between (E1_{n+1})^(-1/2) A phi1_{n+1} and phi2_n, up to sign.
  double map_distance = 0.0;
  /// L2 norm of (E1_{n+1})^(-1/2) A phi1_{n+1}, without renormalizing.
  double map_norm = 0.0;
};

struct SpectrumPairingReport {
  /// Spectrum of H1 after subtracting `shift`, so its ground level sits at zero.
  BoundStateSpectrum spectrum1;
  BoundStateSpectrum spectrum2;
  double shift = 0.0;
  std::vector<PairingEntry> pairs;
  /// spectrum2 has exactly one level fewer than spectrum1 (or both are empty).
  bool counts_match = true;
  double max_energy_diff = 0.0;
  double max_map_distance = 0.0;

  bool holds(double energy_tol, double map_tol) const {
    return counts_match && max_energy_diff <= energy_tol && max_map_distance <= map_tol;
  }
};

/// Solves both partner spectra independently and compares E2_n with E1_{n+1}
/// and phi2_n with the mapped (E1_{n+1})^(-1/2) A phi1_{n+1}.
SpectrumPairingReport verify_spectrum_pairing(const Superpotential& w, const Grid& grid,
                                              const UnitSystem& units, bool include_deltas = true,
                                              const BoundStateOptions& options = {});

}  // namespace susyqm
