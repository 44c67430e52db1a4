#include "susyqm/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "susyqm/errors.hpp"
#include "susyqm/numerov.hpp"

namespace susyqm {

namespace {

constexpr double kPi = std::numbers::pi;

// Map onto (-pi/2, pi/2].
double principal(double delta) {
  double d = std::remainder(delta, kPi);
  if (d <= -kPi / 2) d += kPi;
  return d;
}

}  // namespace

double radial_coefficient(double alpha, int sign, int partner, const UnitSystem& units) {
  if (sign != 1 && sign != -1) throw InvalidParameter("radial sign must be +1 or -1");
  if (partner != 1 && partner != 2) throw InvalidParameter("partner must be 1 or 2");
  const double s = partner == 1 ? -sign : sign;
  return alpha * (alpha + s * units.kappa());
}

RadialProblem make_radial_problem(double alpha, double r0, int sign, int partner, double energy,
                                  const UnitSystem& units, double step, std::optional<double> r_max) {
  if (!(r0 > 0.0)) throw InvalidShift("r0 must be positive");
  if (!(energy > 0.0)) throw ChannelClosed("energy must exceed V(inf) = 0");
  if (!(step > 0.0)) throw InvalidGrid("step must be positive");
  const double k = units.wavenumber(energy);
  const double span = r_max.value_or(1e3 * std::max(r0, 1.0 / k));
  const double intervals = std::ceil(span / step - 1e-9);
  Grid grid(0.0, intervals * step, step);

  const double c = radial_coefficient(alpha, sign, partner, units);
  Eigen::VectorXd v(grid.size());
  for (Index i = 0; i < grid.size(); ++i) {
    const double d = grid.x(i) + r0;
    v[i] = c / (d * d);
  }
  return RadialProblem{grid, std::move(v), 0.0, energy, units, kRadialMatchTol, c, r0};
}

double PhaseShift::unwrapped() const { return delta0 + branch * kPi; }

PhaseShift phase_shift(const RadialProblem& p) {
  if (p.grid.x_min() != 0.0) throw InvalidGrid("radial grid must start at r = 0");
  if (p.values.size() != p.grid.size()) throw GridMismatch("potential samples do not match the grid");
  if (!(p.energy > p.v_inf)) throw ChannelClosed("energy must exceed V(inf)");

  PhaseShift out;
  out.energy = p.energy;
  out.k = p.units.wavenumber(p.energy - p.v_inf);
  const Index n = p.grid.size();
  out.tail_residual = std::abs(p.values[n - 1] - p.v_inf);
  if (out.tail_residual > p.match_tol)
    throw NonAsymptotic("radial tail residual " + std::to_string(out.tail_residual) + " exceeds match_tol " +
                        std::to_string(p.match_tol) + "; increase r_max");

  // A potential that equals its limit everywhere scatters nothing.
  if ((p.values.array() == p.v_inf).all()) return out;

  const double h = p.grid.step();
  const double scale = p.units.ode_scale();
  const Eigen::VectorXd f = scale * (p.values.array() - p.energy).matrix();
  const auto prop = numerov_forward<double>(f, h, 0.0, h);
  const auto& u = prop.psi;

  // u = a sin(kd r) + b cos(kd r) over the last two nodes, with the discrete
  // wavenumber of the recurrence in the asymptotic region.
  const double kd = numerov_wavenumber(scale * (p.v_inf - p.energy), h);
  const double r1 = p.grid.x(n - 2), r2 = p.grid.x(n - 1);
  const double det = std::sin(kd * r1) * std::cos(kd * r2) - std::cos(kd * r1) * std::sin(kd * r2);
  const double a = (u[n - 2] * std::cos(kd * r2) - u[n - 1] * std::cos(kd * r1)) / det;
  const double b = (u[n - 1] * std::sin(kd * r1) - u[n - 2] * std::sin(kd * r2)) / det;
  const double tail = -scale * p.tail_coefficient / (2.0 * out.k * (r2 + p.tail_offset));
  out.delta0 = principal(std::atan2(b, a) + tail);

  // Total phase theta(r_max) = kd r_max + delta lies in [N pi, (N+1) pi) with
  // N the number of nodes in (0, r_max].
  const int nodes = count_sign_changes(u.tail(n - 1));
  const double matched = principal(std::atan2(b, a));
  const double theta_mod = std::fmod(std::fmod(kd * r2 + matched, kPi) + kPi, kPi);
  const double theta = nodes * kPi + theta_mod;
  out.branch = static_cast<int>(std::lround((theta - kd * r2 + tail - out.delta0) / kPi));

  const double s = std::sin(out.delta0);
  out.cross_section_s = 4.0 * kPi / (out.k * out.k) * s * s;
  return out;
}

std::vector<PhaseShift> phase_shift_sweep(const std::vector<RadialProblem>& problems) {
  std::vector<PhaseShift> out;
  out.reserve(problems.size());
  for (const auto& p : problems) out.push_back(phase_shift(p));

  std::vector<std::size_t> order(out.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return out[a].k > out[b].k; });
  double previous = 0.0;
  for (std::size_t i : order) {
    auto& ps = out[i];
    ps.branch = static_cast<int>(std::lround((previous - ps.delta0) / kPi));
    previous = ps.unwrapped();
  }
  return out;
}

}  // namespace susyqm
