#pragma once

#include <Eigen/Core>
#include <vector>

#include "susyqm/grid.hpp"
#include "susyqm/numerov.hpp"
#include "susyqm/superpotential.hpp"
#include "susyqm/units.hpp"

namespace susyqm {

/// Dirac delta term `strength * delta(x - position)` added to a potential.
struct PointInteraction {
  double position;
  double strength;
};

/// A potential as the solvers see it: smooth samples on a grid, delta terms,
/// the positions where the samples are not smooth, and the limits at infinity.
struct SampledPotential {
  Grid grid;
  Eigen::VectorXd values;
  std::vector<PointInteraction> deltas;
  std::vector<double> breakpoints;
  double v_left = 0.0;
  double v_right = 0.0;

  /// max(|V(x_min) - v_left|, |V(x_max) - v_right|).
  double tail_residual() const;

  /// Same potential with the delta terms dropped (breakpoints are kept).
  SampledPotential without_deltas() const;

  /// Mirror image x -> -x.
  SampledPotential mirrored() const;
};

/// Superpotential given only by samples, e.g. a numerical Riccati solution.
/// The asymptotes default to the edge samples.
struct SampledSuperpotential {
  Grid grid;
  Eigen::VectorXd values;
};

struct PartnerPotentials {
  Grid grid;
  Eigen::VectorXd v1;
  Eigen::VectorXd v2;
  std::vector<PointInteraction> v1_deltas;
  std::vector<PointInteraction> v2_deltas;
  double v_left_1 = 0.0;
  double v_right_1 = 0.0;
  double v_left_2 = 0.0;
  double v_right_2 = 0.0;
  std::vector<double> breakpoints;

  /// Partner 1 or 2 as a solver input, with or without its delta terms.
  SampledPotential partner(int which, bool include_deltas) const;
};

/// V1 = W^2 - kappa W', V2 = W^2 + kappa W' on the grid, plus the distributional
/// part of W' at every jump as point interactions of strength -/+ kappa * dW.
PartnerPotentials build_partners(const Superpotential& w, const Grid& grid, const UnitSystem& units);

/// Same construction from samples; W' by fourth-order finite differences.
PartnerPotentials build_partners(const SampledSuperpotential& w, const UnitSystem& units);

enum class Constancy { V1Constant, V2Constant, NotConstant };

struct ConstancyReport {
  Constancy which = Constancy::NotConstant;
  /// Set when W' vanishes identically and both partners are flat.
  bool both_constant = false;
};

/// Closed-form test of whether a partner is flat, from family parameters alone.
ConstancyReport constancy_condition(const Superpotential& w, const UnitSystem& units);

/// Numerov matching points of a sampled potential: every breakpoint (zero
/// jump) and every delta term (jump = 2m/hbar^2 * strength). Throws
/// InterfaceOffGrid when a position is not a grid node.
std::vector<Interface> interfaces_of(const SampledPotential& potential, const UnitSystem& units);

}  // namespace susyqm
