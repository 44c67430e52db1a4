#include "susyqm/superpotential.hpp"

#include <cmath>
#include <sstream>

#include "susyqm/errors.hpp"

namespace susyqm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw InvalidParameter(std::string(name) + " must be finite");
}

}  // namespace

Superpotential Superpotential::inverse_power_piecewise(double alpha, double x0, int n) {
  require_finite(alpha, "alpha");
  require_finite(x0, "x0");
  if (!(x0 > 0.0))
    throw InvalidShift("x0 must be positive for the piecewise inverse-power family (got " +
                       std::to_string(x0) + ")");
  if (n < 0) throw InvalidParameter("n must be a natural number");
  if (n == 0) return constant(alpha);
  return Superpotential(InversePowerPiecewise{alpha, x0, n});
}

Superpotential Superpotential::inverse_power_shifted(double alpha, double x0, int sign) {
  require_finite(alpha, "alpha");
  require_finite(x0, "x0");
  if (sign != 1 && sign != -1) throw InvalidParameter("sign must be +1 or -1");
  return Superpotential(InversePowerShifted{alpha, x0, sign});
}

Superpotential Superpotential::tanh(double amplitude, double alpha, double x0) {
  require_finite(amplitude, "B");
  require_finite(alpha, "alpha");
  require_finite(x0, "x0");
  if (alpha == 0.0) throw InvalidParameter("tanh family needs alpha != 0");
  return Superpotential(Tanh{amplitude, alpha, x0});
}

Superpotential Superpotential::constant(double value) {
  require_finite(value, "c");
  return Superpotential(Constant{value});
}

Superpotential Superpotential::zero() { return Superpotential(Zero{}); }

double Superpotential::value(double x) const {
  return std::visit(
      Overloaded{
          [x](const InversePowerPiecewise& f) {
            if (x < 0.0) return f.alpha / std::pow(f.x0 - x, f.n);
            return -f.alpha / std::pow(x + f.x0, f.n);
          },
          [x](const InversePowerShifted& f) { return f.sign * f.alpha / (x - f.x0); },
          [x](const Tanh& f) { return f.amplitude * std::tanh(f.alpha * (x - f.x0)); },
          [](const Constant& f) { return f.value; },
          [](const Zero&) { return 0.0; },
      },
      family_);
}

double Superpotential::derivative(double x) const {
  return std::visit(
      Overloaded{
          [x](const InversePowerPiecewise& f) {
            const double d = std::abs(x) + f.x0;
            return f.n * f.alpha / std::pow(d, f.n + 1);
          },
          [x](const InversePowerShifted& f) {
            const double d = x - f.x0;
            return -f.sign * f.alpha / (d * d);
          },
          [x](const Tanh& f) {
            const double s = 1.0 / std::cosh(f.alpha * (x - f.x0));
            return f.amplitude * f.alpha * s * s;
          },
          [](const Constant&) { return 0.0; },
          [](const Zero&) { return 0.0; },
      },
      family_);
}

double Superpotential::w_minus() const {
  return std::visit(Overloaded{
                        [](const InversePowerPiecewise&) { return 0.0; },
                        [](const InversePowerShifted&) { return 0.0; },
                        [](const Tanh& f) { return f.alpha > 0.0 ? -f.amplitude : f.amplitude; },
                        [](const Constant& f) { return f.value; },
                        [](const Zero&) { return 0.0; },
                    },
                    family_);
}

double Superpotential::w_plus() const {
  return std::visit(Overloaded{
                        [](const InversePowerPiecewise&) { return 0.0; },
                        [](const InversePowerShifted&) { return 0.0; },
                        [](const Tanh& f) { return f.alpha > 0.0 ? f.amplitude : -f.amplitude; },
                        [](const Constant& f) { return f.value; },
                        [](const Zero&) { return 0.0; },
                    },
                    family_);
}

std::vector<Jump> Superpotential::jumps() const {
  if (const auto* f = std::get_if<InversePowerPiecewise>(&family_)) {
    return {Jump{0.0, -2.0 * f->alpha / std::pow(f->x0, f->n)}};
  }
  return {};
}

std::vector<double> Superpotential::poles() const {
  if (const auto* f = std::get_if<InversePowerShifted>(&family_)) return {f->x0};
  return {};
}

Superpotential Superpotential::negated() const {
  return std::visit(Overloaded{
                        [](InversePowerPiecewise f) {
                          f.alpha = -f.alpha;
                          return Superpotential(f);
                        },
                        [](InversePowerShifted f) {
                          f.sign = -f.sign;
                          return Superpotential(f);
                        },
                        [](Tanh f) {
                          f.amplitude = -f.amplitude;
                          return Superpotential(f);
                        },
                        [](Constant f) {
                          f.value = -f.value;
                          return Superpotential(f);
                        },
                        [](Zero f) { return Superpotential(f); },
                    },
                    family_);
}

std::string Superpotential::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{
                 [&](const InversePowerPiecewise& f) {
                   os << "InversePowerPiecewise(alpha=" << f.alpha << ", x0=" << f.x0
                      << ", n=" << f.n << ")";
                 },
                 [&](const InversePowerShifted& f) {
                   os << "InversePowerShifted(alpha=" << f.alpha << ", x0=" << f.x0
                      << ", sign=" << f.sign << ")";
                 },
                 [&](const Tanh& f) {
                   os << "Tanh(B=" << f.amplitude << ", alpha=" << f.alpha << ", x0=" << f.x0 << ")";
                 },
                 [&](const Constant& f) { os << "Constant(c=" << f.value << ")"; },
                 [&](const Zero&) { os << "Zero"; },
             },
             family_);
  return os.str();
}

}  // namespace susyqm
