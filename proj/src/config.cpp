#include "susyqm/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "susyqm/errors.hpp"

namespace susyqm {

const char* to_string(Subcommand s) {
  switch (s) {
    case Subcommand::Partners: return "partners";
    case Subcommand::Transmit: return "transmit";
    case Subcommand::Sweep: return "sweep";
    case Subcommand::VerifySusy: return "verify-susy";
    case Subcommand::Bound: return "bound";
    case Subcommand::Radial: return "radial";
    case Subcommand::Riccati: return "riccati";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, std::size_t line) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ParseError(line, "'" + v + "' is not a number");
  if (!std::isfinite(out)) throw ParseError(line, "'" + v + "' is not finite");
  return out;
}

long to_long(const std::string& v, std::size_t line) {
  long out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ParseError(line, "'" + v + "' is not an integer");
  return out;
}

bool to_bool(const std::string& v, std::size_t line) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ParseError(line, "'" + v + "' is not a boolean");
}

int to_sign(const std::string& v, std::size_t line) {
  if (v == "+" || v == "1" || v == "+1") return 1;
  if (v == "-" || v == "-1") return -1;
  throw ParseError(line, "sign must be + or -, got '" + v + "'");
}

int to_partner(const std::string& v, std::size_t line) {
  if (v == "1" || v == "V1" || v == "v1") return 1;
  if (v == "2" || v == "V2" || v == "v2") return 2;
  throw ParseError(line, "partner must be 1 or 2, got '" + v + "'");
}

Subcommand to_subcommand(const std::string& v, std::size_t line) {
  for (auto s : {Subcommand::Partners, Subcommand::Transmit, Subcommand::Sweep, Subcommand::VerifySusy,
                 Subcommand::Bound, Subcommand::Radial, Subcommand::Riccati})
    if (v == to_string(s)) return s;
  throw ParseError(line, "unknown subcommand '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, std::size_t)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"subcommand", [](RunConfig& c, const std::string& v, std::size_t l) { c.subcommand = to_subcommand(v, l); }},
      {"family",
       [](RunConfig& c, const std::string& v, std::size_t l) {
         if (v != "zero" && v != "constant" && v != "tanh" && v != "invpow" && v != "invpow-shifted")
           throw ParseError(l, "unknown family '" + v + "'");
         c.family = v;
       }},
      {"alpha", [](RunConfig& c, const std::string& v, std::size_t l) { c.alpha = to_double(v, l); }},
      {"x0", [](RunConfig& c, const std::string& v, std::size_t l) { c.x0 = to_double(v, l); }},
      {"n",
       [](RunConfig& c, const std::string& v, std::size_t l) {
         const long n = to_long(v, l);
         if (n < 0 || n > 64) throw ParseError(l, "n must be a natural number");
         c.n = static_cast<int>(n);
       }},
      {"sign", [](RunConfig& c, const std::string& v, std::size_t l) { c.sign = to_sign(v, l); }},
      {"B", [](RunConfig& c, const std::string& v, std::size_t l) { c.B = to_double(v, l); }},
      {"c", [](RunConfig& c, const std::string& v, std::size_t l) { c.c = to_double(v, l); }},
      {"hbar", [](RunConfig& c, const std::string& v, std::size_t l) { c.hbar = to_double(v, l); }},
      {"mass", [](RunConfig& c, const std::string& v, std::size_t l) { c.mass = to_double(v, l); }},
      {"x_min", [](RunConfig& c, const std::string& v, std::size_t l) { c.x_min = to_double(v, l); }},
      {"x_max", [](RunConfig& c, const std::string& v, std::size_t l) { c.x_max = to_double(v, l); }},
      {"step", [](RunConfig& c, const std::string& v, std::size_t l) { c.step = to_double(v, l); }},
      {"energy", [](RunConfig& c, const std::string& v, std::size_t l) { c.energy = to_double(v, l); }},
      {"e_min", [](RunConfig& c, const std::string& v, std::size_t l) { c.e_min = to_double(v, l); }},
      {"e_max", [](RunConfig& c, const std::string& v, std::size_t l) { c.e_max = to_double(v, l); }},
      {"n_energies",
       [](RunConfig& c, const std::string& v, std::size_t l) {
         const long n = to_long(v, l);
         if (n < 1 || n > 1000000) throw ParseError(l, "n_energies must be between 1 and 1e6");
         c.n_energies = static_cast<int>(n);
       }},
      {"spacing",
       [](RunConfig& c, const std::string& v, std::size_t l) {
         if (v != "linear" && v != "geometric") throw ParseError(l, "spacing must be linear or geometric");
         c.spacing = v;
       }},
      {"include_deltas", [](RunConfig& c, const std::string& v, std::size_t l) { c.include_deltas = to_bool(v, l); }},
      {"partner", [](RunConfig& c, const std::string& v, std::size_t l) { c.partner = to_partner(v, l); }},
      {"match_tol",
       [](RunConfig& c, const std::string& v, std::size_t l) {
         c.match_tol = to_double(v, l);
         if (!(*c.match_tol > 0.0)) throw ParseError(l, "match_tol must be positive");
       }},
      {"workers",
       [](RunConfig& c, const std::string& v, std::size_t l) {
         const long n = to_long(v, l);
         if (n < 1 || n > 1024) throw ParseError(l, "workers must be between 1 and 1024");
         c.workers = static_cast<unsigned>(n);
       }},
      {"e_window_lo", [](RunConfig& c, const std::string& v, std::size_t l) { c.e_window_lo = to_double(v, l); }},
      {"e_window_hi", [](RunConfig& c, const std::string& v, std::size_t l) { c.e_window_hi = to_double(v, l); }},
      {"r0", [](RunConfig& c, const std::string& v, std::size_t l) { c.r0 = to_double(v, l); }},
      {"r_max", [](RunConfig& c, const std::string& v, std::size_t l) { c.r_max = to_double(v, l); }},
      {"constant_partner",
       [](RunConfig& c, const std::string& v, std::size_t l) { c.constant_partner = to_partner(v, l); }},
      {"w_init", [](RunConfig& c, const std::string& v, std::size_t l) { c.w_init = to_double(v, l); }},
      {"x_init", [](RunConfig& c, const std::string& v, std::size_t l) { c.x_init = to_double(v, l); }},
      {"output_stride",
       [](RunConfig& c, const std::string& v, std::size_t l) {
         const long n = to_long(v, l);
         if (n < 1) throw ParseError(l, "output_stride must be positive");
         c.output_stride = static_cast<int>(n);
       }},
      {"output", [](RunConfig& c, const std::string& v, std::size_t) { c.output = v; }},
      {"timestamp", [](RunConfig& c, const std::string& v, std::size_t l) { c.timestamp = to_bool(v, l); }},
  };
  return table;
}

void require(const std::set<std::string>& seen, std::initializer_list<const char*> keys, const std::string& why) {
  for (const char* k : keys)
    if (!seen.count(k)) throw MissingRequired("'" + std::string(k) + "' is required " + why);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Superpotential RunConfig::superpotential() const {
  if (family == "zero") return Superpotential::zero();
  if (family == "constant") return Superpotential::constant(c);
  if (family == "tanh") return Superpotential::tanh(B, alpha, x0);
  if (family == "invpow") return Superpotential::inverse_power_piecewise(alpha, x0, n);
  if (family == "invpow-shifted") return Superpotential::inverse_power_shifted(alpha, x0, sign);
  throw MissingRequired("no superpotential family given");
}

double RunConfig::resolved_match_tol() const {
  if (match_tol) return *match_tol;
  if (subcommand == Subcommand::Radial) return 1e-5;
  if (family == "invpow" || family == "invpow-shifted") return 1e-4;
  return 1e-8;
}

std::vector<double> RunConfig::energies() const {
  if (energy) return {*energy};
  if (!e_min || !e_max) return {};
  std::vector<double> out;
  out.reserve(n_energies);
  for (int i = 0; i < n_energies; ++i) {
    const double t = n_energies == 1 ? 0.0 : static_cast<double>(i) / (n_energies - 1);
    if (spacing == "geometric") out.push_back(*e_min * std::pow(*e_max / *e_min, t));
    else out.push_back(*e_min + (*e_max - *e_min) * t);
  }
  return out;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ParseError(line, "missing key");
    if (value.empty()) throw ParseError(line, "missing value for '" + key + "'");
    const auto it = setters().find(key);
    if (it == setters().end()) throw UnknownKey("line " + std::to_string(line) + ": '" + key + "'");
    if (!seen.insert(key).second) throw ParseError(line, "'" + key + "' given twice");
    it->second(cfg, value, line);
  }

  require(seen, {"subcommand"}, "");
  const Subcommand sc = cfg.subcommand;
  const bool needs_family = sc != Subcommand::Radial && sc != Subcommand::Riccati;
  if (needs_family) {
    require(seen, {"family"}, std::string("for ") + to_string(sc));
    const std::string f = "for family " + cfg.family;
    if (cfg.family == "tanh") require(seen, {"B", "alpha"}, f);
    if (cfg.family == "invpow") require(seen, {"alpha", "x0"}, f);
    if (cfg.family == "invpow-shifted") require(seen, {"alpha", "x0", "sign"}, f);
    if (cfg.family == "constant") require(seen, {"c"}, f);
    (void)cfg.superpotential();
  }
  const bool has_range = seen.count("e_min") || seen.count("e_max");
  if (cfg.energy && has_range) throw InvalidParameter("give either energy or e_min/e_max, not both");
  switch (sc) {
    case Subcommand::Transmit: require(seen, {"energy"}, "for transmit"); break;
    case Subcommand::Sweep: require(seen, {"e_min", "e_max"}, "for sweep"); break;
    case Subcommand::VerifySusy:
    case Subcommand::Radial:
      if (!cfg.energy) require(seen, {"e_min", "e_max"}, std::string("without energy for ") + to_string(sc));
      break;
    case Subcommand::Riccati: require(seen, {"c", "w_init"}, "for riccati"); break;
    default: break;
  }
  if (sc == Subcommand::Radial) require(seen, {"alpha"}, "for radial");
  if (has_range) {
    if (!(*cfg.e_min < *cfg.e_max) && cfg.n_energies > 1) throw InvalidParameter("e_min must be below e_max");
    if (cfg.spacing == "geometric" && !(*cfg.e_min > 0.0))
      throw InvalidParameter("geometric spacing needs e_min > 0");
  }
  if (cfg.e_window_lo.has_value() != cfg.e_window_hi.has_value())
    throw MissingRequired("e_window_lo and e_window_hi go together");

  (void)cfg.units();
  if (sc != Subcommand::Radial) (void)cfg.grid();
  else if (!(cfg.step > 0.0)) throw InvalidGrid("step must be positive");
  return cfg;
}

std::string render_config(const RunConfig& c) {
  std::ostringstream out;
  auto line = [&](const char* k, const std::string& v) { out << k << " = " << v << '\n'; };
  auto opt = [&](const char* k, const std::optional<double>& v) {
    if (v) line(k, fmt(*v));
  };
  line("subcommand", to_string(c.subcommand));
  if (!c.family.empty()) line("family", c.family);
  line("alpha", fmt(c.alpha));
  line("x0", fmt(c.x0));
  line("n", std::to_string(c.n));
  line("sign", c.sign > 0 ? "+" : "-");
  line("B", fmt(c.B));
  line("c", fmt(c.c));
  line("hbar", fmt(c.hbar));
  line("mass", fmt(c.mass));
  line("x_min", fmt(c.x_min));
  line("x_max", fmt(c.x_max));
  line("step", fmt(c.step));
  opt("energy", c.energy);
  opt("e_min", c.e_min);
  opt("e_max", c.e_max);
  line("n_energies", std::to_string(c.n_energies));
  line("spacing", c.spacing);
  line("include_deltas", c.include_deltas ? "true" : "false");
  line("partner", std::to_string(c.partner));
  opt("match_tol", c.match_tol);
  line("workers", std::to_string(c.workers));
  opt("e_window_lo", c.e_window_lo);
  opt("e_window_hi", c.e_window_hi);
  line("r0", fmt(c.r0));
  opt("r_max", c.r_max);
  line("constant_partner", std::to_string(c.constant_partner));
  line("w_init", fmt(c.w_init));
  line("x_init", fmt(c.x_init));
  line("output_stride", std::to_string(c.output_stride));
  if (!c.output.empty()) line("output", c.output);
  line("timestamp", c.timestamp ? "true" : "false");
  return out.str();
}

RunConfig config_from_header(const std::string& output_text) {
  std::istringstream in(output_text);
  std::string raw;
  std::string body;
  bool inside = false;
  while (std::getline(in, raw)) {
    if (raw == "# begin config") {
      inside = true;
      continue;
    }
    if (raw == "# end config") break;
    if (inside && raw.rfind("# ", 0) == 0) body += raw.substr(2) + '\n';
  }
  if (!inside) throw ParseError(1, "no configuration block in header");
  return parse_config(body);
}

}  // namespace susyqm
