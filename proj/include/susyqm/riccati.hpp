#pragma once

#include <Eigen/Core>
#include <limits>
#include <optional>

#include "susyqm/grid.hpp"
#include "susyqm/partners.hpp"
#include "susyqm/units.hpp"

namespace susyqm {

/// Which partner the Riccati equation holds fixed:
///   V1: W^2 - kappa W' = c, i.e. W' = (W^2 - c) / kappa
///   V2: W^2 + kappa W' = c, i.e. W' = (c - W^2) / kappa
enum class ConstantPartner { V1 = 1, V2 = 2 };

enum class RiccatiFamily { ConstantW, TanhFamily, InversePower, Unclassified };

const char* to_string(RiccatiFamily f);

struct RiccatiClassification {
  RiccatiFamily family = RiccatiFamily::Unclassified;
  /// TanhFamily: W = amplitude * tanh(alpha (x - x0)), alpha > 0.
  /// InversePower: W = sign * alpha / (x - x0), alpha > 0.
  /// ConstantW: W = value.
  double amplitude = 0.0;
  double alpha = 0.0;
  double x0 = 0.0;
  int sign = 0;
  double value = 0.0;
  /// Relative RMS misfit of the chosen form (the best one when Unclassified).
  double fit_residual = std::numeric_limits<double>::infinity();
  double residual_constant = std::numeric_limits<double>::infinity();
  double residual_tanh = std::numeric_limits<double>::infinity();
  double residual_inverse_power = std::numeric_limits<double>::infinity();
};

inline constexpr double kClassifyAccept = 1e-6;

/// Least-squares fits of the samples against a constant, B tanh(alpha (x - x0))
/// and A / (x - x0). A constant wins whenever it fits; otherwise the smaller
/// accepted misfit; otherwise Unclassified.
RiccatiClassification classify_superpotential(const Eigen::VectorXd& x, const Eigen::VectorXd& w,
                                              double accept = kClassifyAccept);

struct RiccatiOptions {
  double ode_tol = 1e-10;
  /// |W| beyond which a branch is declared escaped; default 1e3 max(sqrt|c|, 1).
  std::optional<double> blowup_cap;
  double accept = kClassifyAccept;
};

struct RiccatiSolution {
  double target_const = 0.0;
  ConstantPartner constant_partner = ConstantPartner::V1;
  double w_init = 0.0;
  double x_init = 0.0;
  Grid grid;
  UnitSystem units;
  /// W on the grid; NaN outside [valid_first, valid_last].
  Eigen::VectorXd w_samples;
  Index valid_first = 0;
  Index valid_last = 0;
  /// Where |W| crossed the cap, if it did.
  std::optional<double> escape_left;
  std::optional<double> escape_right;
  double blowup_cap = 0.0;
  double ode_tol = 0.0;
  RiccatiClassification classification;

  bool full_range() const { return valid_first == 0 && valid_last == grid.size() - 1; }
};

/// Dormand-Prince 5(4) in both directions from (x_init, w_init), reporting W at
/// every grid node until |W| exceeds the cap. x_init must be a grid node.
/// Throws ImmediateBlowup when the solution escapes before the neighbouring node.
RiccatiSolution integrate_riccati(double c, ConstantPartner which, double w_init, double x_init,
                                  const Grid& grid, const UnitSystem& units,
                                  const RiccatiOptions& options = {});

/// Partners of the sampled W (finite-difference W'). Throws BlowupInsideGrid
/// unless the solution covers the whole grid.
PartnerPotentials reflectionless_from_solution(const RiccatiSolution& s, const Grid& grid,
                                               const UnitSystem& units);

}  // namespace susyqm
