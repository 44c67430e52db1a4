#include "susyqm/partners.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "susyqm/calculus.hpp"
#include "susyqm/errors.hpp"

namespace susyqm {

namespace {

bool nearly(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

}  // namespace

double SampledPotential::tail_residual() const {
  const Index n = values.size();
  return std::max(std::abs(values[0] - v_left), std::abs(values[n - 1] - v_right));
}

SampledPotential SampledPotential::without_deltas() const {
  SampledPotential out = *this;
  out.deltas.clear();
  return out;
}

SampledPotential SampledPotential::mirrored() const {
  SampledPotential out{grid.mirrored(), values.reverse(), {}, {}, v_right, v_left};
  for (const auto& d : deltas) out.deltas.push_back({-d.position, d.strength});
  for (double b : breakpoints) out.breakpoints.push_back(-b);
  return out;
}

SampledPotential PartnerPotentials::partner(int which, bool include_deltas) const {
  if (which != 1 && which != 2) throw InvalidParameter("partner index must be 1 or 2");
  SampledPotential p{grid, which == 1 ? v1 : v2, {}, breakpoints,
                     which == 1 ? v_left_1 : v_left_2, which == 1 ? v_right_1 : v_right_2};
  if (include_deltas) p.deltas = which == 1 ? v1_deltas : v2_deltas;
  return p;
}

PartnerPotentials build_partners(const Superpotential& w, const Grid& grid, const UnitSystem& units) {
  for (double pole : w.poles()) {
    if (grid.contains(pole))
      throw SingularOnGrid("pole of W at x = " + std::to_string(pole) + " lies inside the grid");
  }
  const double kappa = units.kappa();
  const Index n = grid.size();

  PartnerPotentials out{grid, Eigen::VectorXd(n), Eigen::VectorXd(n), {}, {}, 0, 0, 0, 0, {}};
  for (Index i = 0; i < n; ++i) {
    const double x = grid.x(i);
    const double wv = w.value(x);
    const double dw = w.derivative(x);
    if (!std::isfinite(wv) || !std::isfinite(dw))
      throw SingularOnGrid("W is not finite at x = " + std::to_string(x));
    out.v1[i] = wv * wv - kappa * dw;
    out.v2[i] = wv * wv + kappa * dw;
  }
  for (const Jump& j : w.jumps()) {
    if (!grid.contains(j.position)) continue;
    if (!grid.node_at(j.position))
      throw InterfaceOffGrid("jump of W at x = " + std::to_string(j.position) +
                             " does not fall on a grid node");
    out.v1_deltas.push_back({j.position, -kappa * j.delta_w});
    out.v2_deltas.push_back({j.position, kappa * j.delta_w});
    out.breakpoints.push_back(j.position);
  }
  const double wm = w.w_minus();
  const double wp = w.w_plus();
  out.v_left_1 = out.v_left_2 = wm * wm;
  out.v_right_1 = out.v_right_2 = wp * wp;
  return out;
}

PartnerPotentials build_partners(const SampledSuperpotential& w, const UnitSystem& units) {
  if (w.values.size() != w.grid.size())
    throw GridMismatch("superpotential has " + std::to_string(w.values.size()) +
                       " samples for a grid of " + std::to_string(w.grid.size()));
  if (!w.values.allFinite()) throw SingularOnGrid("sampled superpotential is not finite");
  const double kappa = units.kappa();
  const Eigen::VectorXd dw = derivative(w.values, w.grid.step());
  const Eigen::VectorXd w2 = w.values.cwiseAbs2();

  PartnerPotentials out{w.grid, w2 - kappa * dw, w2 + kappa * dw, {}, {}, 0, 0, 0, 0, {}};
  const double wm = w.values[0];
  const double wp = w.values[w.values.size() - 1];
  out.v_left_1 = out.v_left_2 = wm * wm;
  out.v_right_1 = out.v_right_2 = wp * wp;
  return out;
}

ConstancyReport constancy_condition(const Superpotential& w, const UnitSystem& units) {
  const double kappa = units.kappa();
  ConstancyReport flat{Constancy::V1Constant, true};
  ConstancyReport v1{Constancy::V1Constant, false};
  ConstancyReport v2{Constancy::V2Constant, false};
  ConstancyReport none{};

  const auto& fam = w.family();
  if (std::holds_alternative<Zero>(fam) || std::holds_alternative<Constant>(fam)) return flat;

  if (const auto* f = std::get_if<InversePowerPiecewise>(&fam)) {
    // V1 = alpha^2 / d^(2n) - kappa n alpha / d^(n+1): flat only for n = 1, alpha = +-kappa.
    if (f->alpha == 0.0) return flat;
    if (f->n != 1) return none;
    if (nearly(f->alpha, kappa)) return v1;
    if (nearly(f->alpha, -kappa)) return v2;
    return none;
  }
  if (const auto* f = std::get_if<InversePowerShifted>(&fam)) {
    // V1 = alpha (alpha + sign kappa) / d^2, V2 = alpha (alpha - sign kappa) / d^2.
    if (f->alpha == 0.0) return flat;
    if (nearly(f->alpha, -f->sign * kappa)) return v1;
    if (nearly(f->alpha, f->sign * kappa)) return v2;
    return none;
  }
  if (const auto* f = std::get_if<Tanh>(&fam)) {
    // V1 = B^2 - B (B + kappa alpha) sech^2, V2 = B^2 - B (B - kappa alpha) sech^2.
    if (f->amplitude == 0.0) return flat;
    if (nearly(f->amplitude, -kappa * f->alpha)) return v1;
    if (nearly(f->amplitude, kappa * f->alpha)) return v2;
    return none;
  }
  return none;
}

std::vector<Interface> interfaces_of(const SampledPotential& potential, const UnitSystem& units) {
  std::vector<Interface> out;
  auto add = [&](double position, double jump, const char* what) {
    const auto node = potential.grid.node_at(position);
    if (!node)
      throw InterfaceOffGrid(std::string(what) + " at x = " + std::to_string(position) +
                             " does not fall on a grid node");
    for (auto& existing : out) {
      if (existing.node == *node) {
        existing.jump += jump;
        return;
      }
    }
    out.push_back({*node, jump});
  };
  for (double b : potential.breakpoints) add(b, 0.0, "breakpoint");
  for (const auto& d : potential.deltas) add(d.position, units.ode_scale() * d.strength, "point interaction");
  return out;
}

}  // namespace susyqm
