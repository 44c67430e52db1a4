#include "susyqm/scattering.hpp"

#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "susyqm/errors.hpp"
#include "susyqm/numerov.hpp"

namespace susyqm {

ScatteringSolution solve_scattering(const ScatteringProblem& problem) {
  const SampledPotential& pot = problem.potential;
  const Grid& grid = pot.grid;
  const Index n = grid.size();
  if (pot.values.size() != n)
    throw GridMismatch("potential has " + std::to_string(pot.values.size()) +
                       " samples for a grid of " + std::to_string(n));

  const double energy = problem.energy;
  if (!(energy > pot.v_left))
    throw ChannelClosed("E = " + std::to_string(energy) + " is not above V(-inf) = " +
                        std::to_string(pot.v_left));
  const double tail = pot.tail_residual();
  if (!(tail <= problem.match_tol))
    throw NonAsymptotic("tail residual " + std::to_string(tail) + " exceeds match_tol " +
                        std::to_string(problem.match_tol) + "; widen the grid");

  const UnitSystem& units = problem.units;
  const double scale = units.ode_scale();
  const double h = grid.step();
  const Eigen::VectorXd f = scale * (pot.values.array() - energy).matrix();
  const auto interfaces = interfaces_of(pot, units);

  ScatteringSolution sol;
  sol.energy = energy;
  sol.tail_residual = tail;
  sol.k = units.wavenumber(energy - pot.v_left);
  sol.evanescent = !(energy > pot.v_right);

  const double x_last = grid.x(n - 1);
  const Complex i_unit(0.0, 1.0);
  Complex psi_last;
  Complex psi_prev;
  double trial_log_amplitude = 0.0;  // log of the trial's coefficient in front of exp(i k' x)
  if (!sol.evanescent) {
    sol.k_prime = units.wavenumber(energy - pot.v_right);
    const double kd = numerov_wavenumber(f[n - 1], h);
    psi_last = std::exp(i_unit * (kd * x_last));
    psi_prev = std::exp(i_unit * (kd * grid.x(n - 2)));
  } else {
    sol.k_prime = units.wavenumber(pot.v_right - energy);
    const double qd = numerov_decay(f[n - 1], h);
    psi_last = 1.0;
    psi_prev = std::exp(qd * h);
    trial_log_amplitude = qd * x_last;
  }

  auto prop = numerov_backward<Complex>(f, h, psi_last, psi_prev, interfaces);

  // psi = a exp(i k x) + b exp(-i k x) through the two leftmost nodes.
  const double kd_left = numerov_wavenumber(f[0], h);
  const Complex e0 = std::exp(i_unit * (kd_left * grid.x(0)));
  const Complex e1 = std::exp(i_unit * (kd_left * grid.x(1)));
  const Complex psi0 = prop.psi[0];
  const Complex psi1 = prop.psi[1];
  const Complex det = e0 / e1 - e1 / e0;
  const Complex a = (psi0 / e1 - psi1 / e0) / det;
  const Complex b = (e0 * psi1 - e1 * psi0) / det;

  sol.r_amp = b / a;
  sol.t_amp = std::exp(trial_log_amplitude - prop.log_scale) / a;
  sol.wavefunction = prop.psi / a;
  sol.reflection_coeff = std::norm(sol.r_amp);
  sol.raw_transmission = std::norm(sol.t_amp);
  sol.transmission_coeff = sol.evanescent ? 0.0 : (sol.k_prime / sol.k) * sol.raw_transmission;
  return sol;
}

ScatteringSolution solve_scattering_from_right(const ScatteringProblem& problem) {
  ScatteringProblem mirrored = problem;
  mirrored.potential = problem.potential.mirrored();
  return solve_scattering(mirrored);
}

std::vector<ScatteringSolution> sweep_energies(const ScatteringProblem& prototype,
                                               const std::vector<double>& energies,
                                               unsigned workers) {
  const std::size_t count = energies.size();
  std::vector<ScatteringSolution> out(count);
  std::vector<std::exception_ptr> failures(count);

  auto solve_one = [&](std::size_t i) {
    try {
      ScatteringProblem p = prototype;
      p.energy = energies[i];
      out[i] = solve_scattering(p);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };

  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) solve_one(i);
  } else {
    std::vector<std::thread> pool;
    const unsigned used = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    for (unsigned w = 0; w < used; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < count; i += used) solve_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < count; ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const Error& e) {
      throw TaggedError("energy index", i, e);
    }
  }
  return out;
}

}  // namespace susyqm
