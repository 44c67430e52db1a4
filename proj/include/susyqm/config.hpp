#pragma once

#include <optional>
#include <string>
#include <vector>

#include "susyqm/grid.hpp"
#include "susyqm/superpotential.hpp"
#include "susyqm/units.hpp"

namespace susyqm {

enum class Subcommand { Partners, Transmit, Sweep, VerifySusy, Bound, Radial, Riccati };

const char* to_string(Subcommand s);

/// Flat run description. Everything a run needs is here; `superpotential()`
/// rebuilds the family object from the parameters.
struct RunConfig {
  Subcommand subcommand = Subcommand::Transmit;

  // superpotential
  std::string family;  // zero | constant | tanh | invpow | invpow-shifted
  double alpha = 1.0;
  double x0 = 0.0;
  int n = 1;
  int sign = 1;
  double B = 1.0;
  double c = 0.0;

  // units and grid
  double hbar = 1.0;
  double mass = 0.5;
  double x_min = -200.0;
  double x_max = 200.0;
  double step = 0.001;

  // energies: either `energy` or the range
  std::optional<double> energy;
  std::optional<double> e_min;
  std::optional<double> e_max;
  int n_energies = 10;
  std::string spacing = "linear";  // linear | geometric

  bool include_deltas = false;
  int partner = 1;
  /// Tail tolerance; family dependent when unset (see resolved_match_tol).
  std::optional<double> match_tol;
  unsigned workers = 1;

  // bound
  std::optional<double> e_window_lo;
  std::optional<double> e_window_hi;

  // radial
  double r0 = 1.0;
  std::optional<double> r_max;

  // riccati
  int constant_partner = 1;
  double w_init = 0.0;
  double x_init = 0.0;
  int output_stride = 1;

  std::string output;
  bool timestamp = false;

  Superpotential superpotential() const;
  UnitSystem units() const { return UnitSystem(hbar, mass); }
  Grid grid() const { return Grid(x_min, x_max, step); }
  /// Explicit match_tol, else 1e-5 for radial runs, 1e-4 for the
  /// algebraic-tail families, 1e-8 otherwise.
  double resolved_match_tol() const;
  /// The single energy or the expanded range, in input order.
  std::vector<double> energies() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// `key = value` per line, `#` starts a comment. Unknown or repeated keys,
/// malformed or non-finite numbers and missing required keys are errors;
/// family parameters are validated by constructing the superpotential.
RunConfig parse_config(const std::string& text);

/// Canonical `key = value` lines that parse back to the same RunConfig.
std::string render_config(const RunConfig& config);

/// Recovers the configuration echoed in the header of a run's output.
RunConfig config_from_header(const std::string& output_text);

}  // namespace susyqm
