#include "susyqm/susy_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "susyqm/errors.hpp"
#include "susyqm/numerov.hpp"
#include "susyqm/partners.hpp"

namespace susyqm {

namespace {

std::vector<Index> jump_nodes(const Superpotential& w, const Grid& grid) {
  std::vector<Index> nodes;
  for (const Jump& j : w.jumps()) {
    if (!grid.contains(j.position)) continue;
    const auto node = grid.node_at(j.position);
    if (!node) throw InterfaceOffGrid("jump of W is not on a grid node");
    nodes.push_back(*node);
  }
  return nodes;
}

template <typename Scalar>
OperatorApplication<Scalar> ladder(const Superpotential& w, const SampleVector<Scalar>& psi,
                                   const Grid& grid, const UnitSystem& units, double sign) {
  if (psi.size() != grid.size())
    throw GridMismatch("wavefunction has " + std::to_string(psi.size()) + " samples for a grid of " +
                       std::to_string(grid.size()));
  const auto breaks = jump_nodes(w, grid);
  const SampleVector<Scalar> dpsi = derivative(psi, grid.step(), breaks);
  OperatorApplication<Scalar> out{psi, SampleVector<Scalar>(psi.size()), Scalar(1)};
  const double kappa = units.kappa();
  for (Index i = 0; i < psi.size(); ++i) {
    const double wv = w.value(grid.x(i));
    if (!std::isfinite(wv)) throw SingularOnGrid("W is not finite on the grid");
    out.output[i] = sign * kappa * dpsi[i] + wv * psi[i];
  }
  return out;
}

}  // namespace

template <typename Scalar>
OperatorApplication<Scalar> apply_a(const Superpotential& w, const SampleVector<Scalar>& psi,
                                    const Grid& grid, const UnitSystem& units) {
  return ladder(w, psi, grid, units, 1.0);
}

template <typename Scalar>
OperatorApplication<Scalar> apply_a_dagger(const Superpotential& w, const SampleVector<Scalar>& psi,
                                           const Grid& grid, const UnitSystem& units) {
  return ladder(w, psi, grid, units, -1.0);
}

template OperatorApplication<double> apply_a(const Superpotential&, const SampleVector<double>&,
                                             const Grid&, const UnitSystem&);
template OperatorApplication<Complex> apply_a(const Superpotential&, const SampleVector<Complex>&,
                                              const Grid&, const UnitSystem&);
template OperatorApplication<double> apply_a_dagger(const Superpotential&,
                                                    const SampleVector<double>&, const Grid&,
                                                    const UnitSystem&);
template OperatorApplication<Complex> apply_a_dagger(const Superpotential&,
                                                     const SampleVector<Complex>&, const Grid&,
                                                     const UnitSystem&);

Complex incident_amplitude(const Eigen::VectorXcd& psi, const Grid& grid, const UnitSystem& units,
                           double energy, double v_left) {
  const double kd = numerov_wavenumber(units.ode_scale() * (v_left - energy), grid.step());
  const Complex i_unit(0.0, 1.0);
  const Complex e0 = std::exp(i_unit * (kd * grid.x(0)));
  const Complex e1 = std::exp(i_unit * (kd * grid.x(1)));
  const Complex det = e0 / e1 - e1 / e0;
  return (psi[0] / e1 - psi[1] / e0) / det;
}

Eigen::VectorXd zero_mode(const Superpotential& w, const Grid& grid, const UnitSystem& units) {
  const Index n = grid.size();
  const double h = grid.step();
  const auto jumps = w.jumps();
  // W just left of x: value() returns the right-hand limit at a jump.
  auto left_limit = [&](double x) {
    double v = w.value(x);
    for (const Jump& j : jumps)
      if (std::abs(j.position - x) <= 1e-9 * h) v -= j.delta_w;
    return v;
  };
  // Cumulative Simpson on each interval with a midpoint evaluation of W.
  Eigen::VectorXd integral(n);
  integral[0] = 0.0;
  for (Index i = 0; i + 1 < n; ++i) {
    const double a = grid.x(i);
    const double b = grid.x(i + 1);
    integral[i + 1] =
        integral[i] + h / 6.0 * (w.value(a) + 4.0 * w.value(0.5 * (a + b)) + left_limit(b));
  }
  const Index anchor = grid.node_at(0.0).value_or(0);
  Eigen::VectorXd exponent = -(integral.array() - integral[anchor]).matrix() / units.kappa();
  exponent.array() -= exponent.maxCoeff();
  Eigen::VectorXd mode = exponent.array().exp().matrix();
  mode /= std::sqrt(norm_squared(mode, h));
  return mode;
}

AmplitudeRelationReport verify_amplitude_relations(const Superpotential& w, double energy,
                                                   const Grid& grid, const UnitSystem& units,
                                                   bool include_deltas, double match_tol) {
  const PartnerPotentials partners = build_partners(w, grid, units);
  ScatteringSolution sol[2];
  for (int p = 0; p < 2; ++p) {
    try {
      sol[p] = solve_scattering({partners.partner(p + 1, include_deltas), energy, units, match_tol});
    } catch (const Error& e) {
      throw TaggedError("partner", static_cast<std::size_t>(p + 1), e);
    }
  }

  AmplitudeRelationReport rep;
  rep.energy = energy;
  rep.include_deltas = include_deltas;
  rep.r1 = sol[0].r_amp;
  rep.r2 = sol[1].r_amp;
  rep.t1 = sol[0].t_amp;
  rep.t2 = sol[1].t_amp;
  rep.k = sol[0].k;
  rep.k_prime = sol[0].k_prime;
  rep.evanescent = sol[0].evanescent;
  rep.w_minus = w.w_minus();
  rep.w_plus = w.w_plus();
  rep.tail_residual = std::max(sol[0].tail_residual, sol[1].tail_residual);

  const double kappa = units.kappa();
  const Complex i_unit(0.0, 1.0);
  const Complex ik = i_unit * (kappa * rep.k);
  // exp(i k' x) with k' = i q on a closed channel.
  const Complex ikp = rep.evanescent ? Complex(-kappa * rep.k_prime, 0.0) : i_unit * (kappa * rep.k_prime);
  const Complex r_factor = (rep.w_minus + ik) / (rep.w_minus - ik);
  const Complex t_factor = (rep.w_plus - ikp) / (rep.w_minus - ik);
  rep.residual_r = std::abs(rep.r1 - rep.r2 * r_factor) / std::max(std::abs(rep.r1), kResidualFloor);
  rep.residual_t = std::abs(rep.t1 - rep.t2 * t_factor) / std::max(std::abs(rep.t1), kResidualFloor);

  // phi1 ~ A^dagger phi2, normalized by matching the incident wave of phi1 (unit amplitude).
  const auto mapped = apply_a_dagger<Complex>(w, sol[1].wavefunction, grid, units);
  const Complex incident = incident_amplitude(mapped.output, grid, units, energy, partners.v_left_1);
  rep.normalization = 1.0 / incident;
  rep.predicted_normalization = 1.0 / (rep.w_minus - ik);
  rep.normalization_rule = "phi1 = N * Adagger(phi2), N fixed by unit incident amplitude of phi1";
  const Eigen::VectorXcd diff = rep.normalization * mapped.output - sol[0].wavefunction;
  rep.map_residual = diff.cwiseAbs().maxCoeff() / sol[0].wavefunction.cwiseAbs().maxCoeff();
  return rep;
}

}  // namespace susyqm
