#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "susyqm/grid.hpp"
#include "susyqm/units.hpp"

namespace susyqm {

inline constexpr double kRadialMatchTol = 1e-5;

/// s-wave problem on r in [0, r_max] with u(0) = 0.
struct RadialProblem {
  Grid grid;  ///< starts at r = 0
  Eigen::VectorXd values;
  double v_inf = 0.0;
  double energy = 0.0;
  UnitSystem units{};
  double match_tol = kRadialMatchTol;
  /// Known tail V - V(inf) = tail_coefficient / (r + tail_offset)^2 beyond r_max.
  /// Its phase, -(2m/hbar^2) c / (2 k (r_max + offset)) to first order, is added
  /// to delta0. Zero disables the correction.
  double tail_coefficient = 0.0;
  double tail_offset = 0.0;
};

/// Partners of W(r) = -sign * alpha / (r + r0):
///   V1 = alpha (alpha - sign kappa) / (r + r0)^2
///   V2 = alpha (alpha + sign kappa) / (r + r0)^2
/// so sign = +1 flattens V1 and sign = -1 flattens V2 when alpha = kappa.
double radial_coefficient(double alpha, int sign, int partner, const UnitSystem& units);

/// Samples coefficient / (r + r0)^2 on [0, r_max]. Without r_max the range is
/// 10^3 max(r0, 1/k), rounded up to a whole number of steps.
RadialProblem make_radial_problem(double alpha, double r0, int sign, int partner, double energy,
                                  const UnitSystem& units, double step,
                                  std::optional<double> r_max = std::nullopt);

struct PhaseShift {
  double energy = 0.0;
  double k = 0.0;
  /// Principal value in (-pi/2, pi/2].
  double delta0 = 0.0;
  /// Absolute phase from node counting is delta0 + branch * pi.
  int branch = 0;
  double cross_section_s = 0.0;
  double tail_residual = 0.0;

  double unwrapped() const;
};

/// Numerov from u(0) = 0, matched to sin(k r + delta0) over the last two nodes.
/// Throws ChannelClosed if E <= V(inf) and NonAsymptotic when the tail at r_max
/// is further than match_tol from V(inf).
PhaseShift phase_shift(const RadialProblem& problem);

/// Phase shifts at each energy. `branch` is reassigned by continuity in k,
/// starting from the largest k with the branch nearest zero.
std::vector<PhaseShift> phase_shift_sweep(const std::vector<RadialProblem>& problems);

}  // namespace susyqm
