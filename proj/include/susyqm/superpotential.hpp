#pragma once

#include <string>
#include <variant>
#include <vector>

namespace susyqm {

/// Odd inverse-power superpotential with a jump at the origin:
///   W(x) =  alpha / (x0 - x)^n   for x < 0
///   W(x) = -alpha / (x + x0)^n   for x > 0
/// This branch orientation gives V1 = alpha/(|x|+x0)^(2n) (alpha - kappa n (|x|+x0)^(n-1))
/// and V2 with the opposite sign of the kappa term.
struct InversePowerPiecewise {
  double alpha;
  double x0;
  int n;
};

/// W(x) = sign * alpha / (x - x0), with a pole at x0.
struct InversePowerShifted {
  double alpha;
  double x0;
  int sign;
};

/// W(x) = amplitude * tanh(alpha (x - x0)).
struct Tanh {
  double amplitude;
  double alpha;
  double x0;
};

struct Constant {
  double value;
};

struct Zero {};

/// Position of a jump of W and its signed size W(a+) - W(a-).
struct Jump {
  double position;
  double delta_w;
};

/// Closed family of superpotentials with finite limits at both infinities.
class Superpotential {
 public:
  using Family = std::variant<InversePowerPiecewise, InversePowerShifted, Tanh, Constant, Zero>;

  /// Throws InvalidShift for x0 <= 0; n = 0 collapses to Constant(alpha).
  static Superpotential inverse_power_piecewise(double alpha, double x0, int n);
  static Superpotential inverse_power_shifted(double alpha, double x0, int sign);
  static Superpotential tanh(double amplitude, double alpha, double x0 = 0.0);
  static Superpotential constant(double value);
  static Superpotential zero();

  const Family& family() const noexcept { return family_; }

  /// W(x). At a jump the right-hand limit is returned.
  double value(double x) const;
  /// Classical derivative W'(x); at a jump the right-hand limit.
  double derivative(double x) const;

  double w_minus() const;
  double w_plus() const;

  std::vector<Jump> jumps() const;
  std::vector<double> poles() const;

  /// -W, which exchanges the two partner potentials.
  Superpotential negated() const;

  std::string describe() const;

 private:
  explicit Superpotential(Family f) : family_(f) {}
  Family family_;
};

}  // namespace susyqm
