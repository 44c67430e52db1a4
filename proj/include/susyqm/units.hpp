#pragma once

#include <cmath>

#include "susyqm/errors.hpp"

namespace susyqm {

/// Physical constants of a run. Defaults make kappa = hbar / sqrt(2 m) equal to one.
class UnitSystem {
 public:
  UnitSystem() = default;
  UnitSystem(double hbar, double mass) : hbar_(hbar), mass_(mass) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidUnits("hbar must be finite and positive");
    if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidUnits("mass must be finite and positive");
    if (!std::isfinite(kappa())) throw InvalidUnits("kappa = hbar/sqrt(2m) is not finite");
  }

  double hbar() const noexcept { return hbar_; }
  double mass() const noexcept { return mass_; }

  /// Coupling in front of d/dx in the ladder operators.
  double kappa() const noexcept { return hbar_ / std::sqrt(2.0 * mass_); }

  /// 2m / hbar^2, so that psi'' = scale * (V - E) * psi.
  double ode_scale() const noexcept { return 2.0 * mass_ / (hbar_ * hbar_); }

  /// Wavenumber of a free wave with the given kinetic energy (must be >= 0).
  double wavenumber(double kinetic) const { return std::sqrt(ode_scale() * kinetic); }

  friend bool operator==(const UnitSystem&, const UnitSystem&) = default;

 private:
  double hbar_ = 1.0;
  double mass_ = 0.5;
};

}  // namespace susyqm
