#include "susyqm/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "susyqm/bound_states.hpp"
#include "susyqm/errors.hpp"
#include "susyqm/radial.hpp"
#include "susyqm/riccati.hpp"
#include "susyqm/scattering.hpp"
#include "susyqm/susy_algebra.hpp"

namespace susyqm {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

class Table {
 public:
  explicit Table(std::string columns) : columns_(std::move(columns)) {}

  template <typename... T>
  void row(const T&... cells) {
    std::string line;
    ((line += (line.empty() ? "" : ",") + cell(cells)), ...);
    rows_ += line + '\n';
  }
  void note(const std::string& key, const std::string& value) { notes_ += "# " + key + " = " + value + '\n'; }
  void footer(const std::string& line) { footer_ += "# " + line + '\n'; }
  void tail(double residual) { tail_ = std::max(tail_, residual); }
  double tail() const { return tail_; }

  std::string str(const RunConfig& cfg) const {
    std::string out = std::string("# susyqm ") + to_string(cfg.subcommand) + '\n';
    out += "# begin config\n";
    std::istringstream in(render_config(cfg));
    for (std::string l; std::getline(in, l);) out += "# " + l + '\n';
    out += "# end config\n";
    out += "# kappa = " + num(cfg.units().kappa()) + '\n';
    out += notes_;
    if (cfg.timestamp) {
      const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
      out += std::string("# generated = ") + buf + '\n';
    }
    return out + columns_ + '\n' + rows_ + footer_;
  }

 private:
  static std::string cell(double v) { return num(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }

  std::string columns_;
  std::string rows_;
  std::string notes_;
  std::string footer_;
  double tail_ = 0.0;
};

const char* kTransmitColumns = "E,k,k_prime,re_t,im_t,re_r,im_r,T_coeff,R_coeff,tail_residual";

void transmit_row(Table& t, const ScatteringSolution& s) {
  t.row(s.energy, s.k, s.k_prime, s.t_amp.real(), s.t_amp.imag(), s.r_amp.real(), s.r_amp.imag(),
        s.transmission_coeff, s.reflection_coeff, s.tail_residual);
  t.tail(s.tail_residual);
}

std::string partners_table(const RunConfig& cfg) {
  const Grid g = cfg.grid();
  const auto p = build_partners(cfg.superpotential(), g, cfg.units());
  Table t("x,V1,V2");
  for (Index i = 0; i < g.size(); i += cfg.output_stride) t.row(g.x(i), p.v1[i], p.v2[i]);
  t.note("v_left_1", num(p.v_left_1));
  t.note("v_right_1", num(p.v_right_1));
  t.note("v_left_2", num(p.v_left_2));
  t.note("v_right_2", num(p.v_right_2));
  t.note("tail_residual", num(std::max(p.partner(1, true).tail_residual(), p.partner(2, true).tail_residual())));
  for (int which = 1; which <= 2; ++which)
    for (const auto& d : which == 1 ? p.v1_deltas : p.v2_deltas)
      t.footer("delta partner=" + std::to_string(which) + " position=" + num(d.position) +
               " strength=" + num(d.strength));
  return t.str(cfg);
}

std::string transmit_table(const RunConfig& cfg) {
  const auto p = build_partners(cfg.superpotential(), cfg.grid(), cfg.units());
  const ScatteringProblem proto{p.partner(cfg.partner, cfg.include_deltas), 0.0, cfg.units(),
                                cfg.resolved_match_tol()};
  Table t(kTransmitColumns);
  for (const auto& s : sweep_energies(proto, cfg.energies(), cfg.workers)) transmit_row(t, s);
  t.note("match_tol", num(proto.match_tol));
  t.note("tail_residual", num(t.tail()));
  return t.str(cfg);
}

std::string verify_table(const RunConfig& cfg) {
  const auto w = cfg.superpotential();
  const Grid g = cfg.grid();
  const UnitSystem u = cfg.units();
  Table t(std::string(kTransmitColumns) + ",residual_r,residual_t,w_minus,w_plus");
  for (double e : cfg.energies()) {
    const auto rep = verify_amplitude_relations(w, e, g, u, cfg.include_deltas, cfg.resolved_match_tol());
    const Complex ts[2] = {rep.t1, rep.t2};
    const Complex rs[2] = {rep.r1, rep.r2};
    for (int p = 0; p < 2; ++p) {
      const double tc = rep.evanescent ? 0.0 : rep.k_prime / rep.k * std::norm(ts[p]);
      t.row(e, rep.k, rep.k_prime, ts[p].real(), ts[p].imag(), rs[p].real(), rs[p].imag(), tc, std::norm(rs[p]),
            rep.tail_residual, rep.residual_r, rep.residual_t, rep.w_minus, rep.w_plus);
    }
    t.tail(rep.tail_residual);
  }
  t.note("rows", "partner 1 then partner 2 for each energy");
  t.note("match_tol", num(cfg.resolved_match_tol()));
  t.note("residual_floor", num(kResidualFloor));
  t.note("tail_residual", num(t.tail()));
  return t.str(cfg);
}

std::string bound_table(const RunConfig& cfg) {
  const auto p = build_partners(cfg.superpotential(), cfg.grid(), cfg.units());
  BoundStateOptions opt;
  if (cfg.e_window_lo) opt.e_window = std::pair{*cfg.e_window_lo, *cfg.e_window_hi};
  const auto s = solve_bound_states(p.partner(cfg.partner, cfg.include_deltas), cfg.units(), opt, cfg.partner);
  Table t("n,E_n,norm_check,node_count");
  for (std::size_t n = 0; n < s.size(); ++n)
    t.row(static_cast<int>(n), s.energies[n], s.norm_checks[n], s.node_counts[n]);
  t.note("energy_tol", num(opt.energy_tol));
  t.note("e_window", num(s.window_lo) + " " + num(s.window_hi));
  for (double e : s.marginal) t.footer("marginal E = " + num(e));
  return t.str(cfg);
}

std::string radial_table(const RunConfig& cfg) {
  const UnitSystem u = cfg.units();
  std::vector<RadialProblem> problems;
  for (double e : cfg.energies()) {
    auto p = make_radial_problem(cfg.alpha, cfg.r0, cfg.sign, cfg.partner, e, u, cfg.step, cfg.r_max);
    p.match_tol = cfg.resolved_match_tol();
    problems.push_back(std::move(p));
  }
  Table t("E,k,delta0,sigma_s");
  for (const auto& ps : phase_shift_sweep(problems)) {
    t.row(ps.energy, ps.k, ps.delta0, ps.cross_section_s);
    t.tail(ps.tail_residual);
  }
  t.note("coefficient", num(radial_coefficient(cfg.alpha, cfg.sign, cfg.partner, u)));
  t.note("match_tol", num(cfg.resolved_match_tol()));
  t.note("tail_residual", num(t.tail()));
  return t.str(cfg);
}

std::string riccati_table(const RunConfig& cfg) {
  const Grid g = cfg.grid();
  RiccatiOptions opt;
  const auto s = integrate_riccati(cfg.c, cfg.constant_partner == 1 ? ConstantPartner::V1 : ConstantPartner::V2,
                                   cfg.w_init, cfg.x_init, g, cfg.units(), opt);
  Table t("x,W");
  for (Index i = s.valid_first; i <= s.valid_last; i += cfg.output_stride) t.row(g.x(i), s.w_samples[i]);
  t.note("ode_tol", num(s.ode_tol));
  t.note("blowup_cap", num(s.blowup_cap));
  const auto& c = s.classification;
  t.footer(std::string("classification = ") + to_string(c.family));
  switch (c.family) {
    case RiccatiFamily::TanhFamily:
      t.footer("B = " + num(c.amplitude));
      t.footer("alpha = " + num(c.alpha));
      t.footer("x0 = " + num(c.x0));
      break;
    case RiccatiFamily::InversePower:
      t.footer("alpha = " + num(c.alpha));
      t.footer("x0 = " + num(c.x0));
      t.footer(std::string("sign = ") + (c.sign > 0 ? "+" : "-"));
      break;
    case RiccatiFamily::ConstantW: t.footer("value = " + num(c.value)); break;
    case RiccatiFamily::Unclassified: break;
  }
  t.footer("fit_residual = " + num(c.fit_residual));
  if (s.escape_left) t.footer("escape_left = " + num(*s.escape_left));
  if (s.escape_right) t.footer("escape_right = " + num(*s.escape_right));
  return t.str(cfg);
}

}  // namespace

std::string render_run(const RunConfig& cfg) {
  switch (cfg.subcommand) {
    case Subcommand::Partners: return partners_table(cfg);
    case Subcommand::Transmit:
    case Subcommand::Sweep: return transmit_table(cfg);
    case Subcommand::VerifySusy: return verify_table(cfg);
    case Subcommand::Bound: return bound_table(cfg);
    case Subcommand::Radial: return radial_table(cfg);
    case Subcommand::Riccati: return riccati_table(cfg);
  }
  throw InvalidParameter("unknown subcommand");
}

int run(const RunConfig& cfg, std::ostream& diag, const std::string& output_path) {
  std::string doc;
  try {
    doc = render_run(cfg);
  } catch (const Error& e) {
    diag << "error: " << e.what() << '\n';
    return static_cast<int>(e.category());
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorCategory::Numeric);
  }

  const std::string path = output_path.empty() ? cfg.output : output_path;
  if (path.empty()) {
    std::cout << doc;
    std::cout.flush();
    if (!std::cout) {
      diag << "error: writing to standard output failed\n";
      return static_cast<int>(ErrorCategory::Io);
    }
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << doc;
  out.close();
  if (!out) {
    diag << "error: cannot write " << path << '\n';
    return static_cast<int>(ErrorCategory::Io);
  }
  return 0;
}

int run_file(const std::string& config_path, std::ostream& diag, const std::string& output_path) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    diag << "error: cannot read " << config_path << '\n';
    return static_cast<int>(ErrorCategory::Io);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  RunConfig cfg;
  try {
    cfg = parse_config(buf.str());
  } catch (const Error& e) {
    diag << "error: " << config_path << ": " << e.what() << '\n';
    return static_cast<int>(e.category());
  }
  return run(cfg, diag, output_path);
}

}  // namespace susyqm
