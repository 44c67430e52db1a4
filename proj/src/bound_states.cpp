#include "susyqm/bound_states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "susyqm/calculus.hpp"
#include "susyqm/errors.hpp"
#include "susyqm/numerov.hpp"
#include "susyqm/susy_algebra.hpp"

namespace susyqm {

namespace {

class Shooter {
 public:
  Shooter(const SampledPotential& potential, const UnitSystem& units)
      : pot_(potential), scale_(units.ode_scale()), h_(potential.grid.step()),
        interfaces_(interfaces_of(potential, units)) {}

  Eigen::VectorXd f_at(double energy) const {
    return scale_ * (pot_.values.array() - energy).matrix();
  }

  /// Dirichlet levels of the box below `energy`.
  int levels_below(double energy) const {
    const auto prop = numerov_forward<double>(f_at(energy), h_, 0.0, h_, interfaces_);
    return count_sign_changes(prop.psi);
  }

  Eigen::VectorXd eigenfunction(double energy) const {
    const Index n = pot_.values.size();
    const Eigen::VectorXd f = f_at(energy);

    // Match at the outermost classically allowed node, or at the deepest point
    // of the potential when there is none (a level held only by a delta).
    Index m = -1;
    for (Index i = n - 1; i >= 0; --i) {
      if (pot_.values[i] < energy) {
        m = i;
        break;
      }
    }
    if (m < 0) {
      if (!pot_.deltas.empty()) {
        const auto strongest = std::min_element(
            pot_.deltas.begin(), pot_.deltas.end(),
            [](const PointInteraction& a, const PointInteraction& b) { return a.strength < b.strength; });
        m = pot_.grid.node_at(strongest->position).value_or(n / 2);
      } else {
        pot_.values.minCoeff(&m);
      }
    }
    m = std::clamp<Index>(m, 5, n - 6);
    for (const auto& itf : interfaces_)
      if (itf.node == m) ++m;

    const auto left = numerov_forward<double>(f, h_, 0.0, h_, interfaces_, m);
    const auto right = numerov_backward<double>(f, h_, 0.0, h_, interfaces_, m);
    Eigen::VectorXd psi(n);
    psi.head(m + 1) = left.psi.head(m + 1);
    const double ratio = left.psi[m] / right.psi[m];
    psi.tail(n - m - 1) = ratio * right.psi.tail(n - m - 1);
    return psi;
  }

 private:
  const SampledPotential& pot_;
  double scale_;
  double h_;
  std::vector<Interface> interfaces_;
};

void fix_sign(Eigen::VectorXd& psi) {
  const double peak = psi.cwiseAbs().maxCoeff();
  for (Index i = 1; i + 1 < psi.size(); ++i) {
    const double a = std::abs(psi[i]);
    if (a > 1e-3 * peak && a >= std::abs(psi[i - 1]) && a >= std::abs(psi[i + 1])) {
      if (psi[i] < 0.0) psi = -psi;
      return;
    }
  }
}

}  // namespace

BoundStateSpectrum solve_bound_states(const SampledPotential& potential, const UnitSystem& units,
                                      const BoundStateOptions& options, int potential_tag) {
  if (potential.values.size() != potential.grid.size())
    throw GridMismatch("potential samples do not match the grid");

  BoundStateSpectrum out;
  out.potential_tag = potential_tag;
  const double threshold = std::min(potential.v_left, potential.v_right);

  double attractive = 0.0;
  for (const auto& d : potential.deltas)
    if (d.strength < 0.0) attractive += -d.strength;
  const double lower_bound = potential.values.minCoeff() - units.ode_scale() * attractive * attractive / 4.0;
  if (options.e_window) {
    out.window_lo = options.e_window->first;
    out.window_hi = options.e_window->second;
  } else {
    out.window_lo = lower_bound - 1e-9 * (1.0 + std::abs(lower_bound));
    out.window_hi = threshold;
  }
  if (!(out.window_lo < out.window_hi)) return out;

  const Shooter shooter(potential, units);
  const int first = shooter.levels_below(out.window_lo);
  const int count = shooter.levels_below(out.window_hi);
  const double h = potential.grid.step();

  for (int level = first; level < count; ++level) {
    double lo = out.window_lo;
    double hi = out.window_hi;
    int iter = 0;
    while (hi - lo > options.energy_tol * std::max(1.0, std::abs(lo))) {
      if (++iter > options.max_iter)
        throw NotConverged("bisection for level " + std::to_string(level) + " did not converge in " +
                           std::to_string(options.max_iter) + " iterations");
      const double mid = 0.5 * (lo + hi);
      if (shooter.levels_below(mid) > level) hi = mid;
      else lo = mid;
    }
    const double energy = 0.5 * (lo + hi);
    if (threshold - energy < options.marginal_band) {
      out.marginal.push_back(energy);
      continue;
    }

    Eigen::VectorXd psi = shooter.eigenfunction(energy);
    psi /= std::sqrt(norm_squared(psi, h));
    fix_sign(psi);
    const int nodes = count_sign_changes(psi, 1e-8 * psi.cwiseAbs().maxCoeff());
    if (nodes != level)
      throw NotConverged("eigenfunction of level " + std::to_string(level) + " has " +
                         std::to_string(nodes) + " nodes");
    const Eigen::VectorXd density = psi.cwiseAbs2();
    out.energies.push_back(energy);
    out.node_counts.push_back(nodes);
    out.norm_checks.push_back(integrate_simpson(density, h));
    out.eigenfunctions.push_back(std::move(psi));
  }
  return out;
}

SpectrumPairingReport verify_spectrum_pairing(const Superpotential& w, const Grid& grid,
                                              const UnitSystem& units, bool include_deltas,
                                              const BoundStateOptions& options) {
  const PartnerPotentials partners = build_partners(w, grid, units);
  SpectrumPairingReport rep;
  rep.spectrum1 = solve_bound_states(partners.partner(1, include_deltas), units, options, 1);
  rep.spectrum2 = solve_bound_states(partners.partner(2, include_deltas), units, options, 2);

  if (!rep.spectrum1.empty()) {
    rep.shift = rep.spectrum1.energies.front();
    for (double& e : rep.spectrum1.energies) e -= rep.shift;
  }
  const std::size_t n1 = rep.spectrum1.size();
  const std::size_t n2 = rep.spectrum2.size();
  rep.counts_match = (n1 == 0 && n2 == 0) || n2 + 1 == n1;

  const double h = grid.step();
  for (std::size_t n = 0; n < n2 && n + 1 < n1; ++n) {
    PairingEntry e;
    e.n = static_cast<int>(n);
    e.e2 = rep.spectrum2.energies[n];
    e.e1_next = rep.spectrum1.energies[n + 1];
    e.energy_diff = std::abs(e.e2 - e.e1_next);

    const auto mapped = apply_a<double>(w, rep.spectrum1.eigenfunctions[n + 1], grid, units);
    const Eigen::VectorXd image = mapped.output / std::sqrt(e.e1_next);
    const Eigen::VectorXd& target = rep.spectrum2.eigenfunctions[n];
    e.map_norm = std::sqrt(norm_squared(image, h));
    const Eigen::VectorXd minus = image - target;
    const Eigen::VectorXd plus = image + target;
    e.map_distance = std::sqrt(std::min(norm_squared(minus, h), norm_squared(plus, h)));

    rep.max_energy_diff = std::max(rep.max_energy_diff, e.energy_diff);
    rep.max_map_distance = std::max(rep.max_map_distance, e.map_distance);
    rep.pairs.push_back(e);
  }
  return rep;
}

}  // namespace susyqm
