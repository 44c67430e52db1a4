#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "susyqm/errors.hpp"
#include "susyqm/runner.hpp"

using namespace susyqm;

namespace {

std::vector<std::vector<double>> rows(const std::string& doc, std::string* columns = nullptr) {
  std::istringstream in(doc);
  std::vector<std::vector<double>> out;
  bool header_done = false;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_done) {
      header_done = true;
      if (columns) *columns = line;
      continue;
    }
    std::vector<double> r;
    std::istringstream cells(line);
    for (std::string c; std::getline(cells, c, ',');) r.push_back(std::stod(c));
    out.push_back(r);
  }
  return out;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("susyqm_test_" + name)).string();
}

}  // namespace

TEST_CASE("defaults are filled in") {
  auto c = parse_config("family = tanh\nB = 1\nalpha = 1\nsubcommand = transmit\nenergy = 2");
  CHECK(c.subcommand == Subcommand::Transmit);
  CHECK(c.family == "tanh");
  CHECK(c.hbar == 1.0);
  CHECK(c.mass == 0.5);
  CHECK(c.step == 0.001);
  CHECK(c.x_min == -200.0);
  CHECK(c.x_max == 200.0);
  CHECK(c.energies() == std::vector<double>{2.0});
  CHECK(c.resolved_match_tol() == 1e-8);
}

TEST_CASE("piecewise verify-susy config") {
  auto c = parse_config(
      "family = invpow\nalpha = 1\nx0 = 1\nn = 1\nsubcommand = verify-susy\nenergy = 1\ninclude_deltas = true");
  CHECK(c.subcommand == Subcommand::VerifySusy);
  CHECK(c.include_deltas);
  CHECK(c.x0 == 1.0);
  CHECK(c.resolved_match_tol() == 1e-4);
  CHECK_THROWS_AS(parse_config("x0 = -1\nfamily = invpow\nalpha = 1\nsubcommand = transmit\nenergy = 1"),
                  InvalidShift);
}

TEST_CASE("parse errors") {
  const std::string ok = "family = zero\nsubcommand = transmit\nenergy = 1\n";
  CHECK_NOTHROW(parse_config(ok));
  CHECK_NOTHROW(parse_config("# comment\n\n" + ok + "step = 0.01  # trailing\n"));
  try {
    parse_config(ok + "stepp = 0.01\n");
    FAIL("expected UnknownKey");
  } catch (const UnknownKey& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  try {
    parse_config(ok + "step = abc\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_config(ok + "step 0.01\n"), ParseError);
  CHECK_THROWS_AS(parse_config(ok + "step =\n"), ParseError);
  CHECK_THROWS_AS(parse_config(ok + "energy = 2\n"), ParseError);
  CHECK_THROWS_AS(parse_config(ok + "step = inf\n"), ParseError);
  CHECK_THROWS_AS(parse_config(ok + "step = nan\n"), ParseError);
  CHECK_THROWS_AS(parse_config(ok + "subcommand = transmit\n"), ParseError);
  CHECK_THROWS_AS(parse_config("family = zero\nenergy = 1\n"), MissingRequired);
  CHECK_THROWS_AS(parse_config("family = tanh\nsubcommand = transmit\nenergy = 1\n"), MissingRequired);
  CHECK_THROWS_AS(parse_config("family = zero\nsubcommand = transmit\n"), MissingRequired);
  CHECK_THROWS_AS(parse_config("family = zero\nsubcommand = frobnicate\nenergy = 1\n"), InputError);
  CHECK_THROWS_AS(parse_config(ok + "e_min = 1\ne_max = 2\n"), InvalidParameter);
  CHECK_THROWS_AS(parse_config(ok + "x_min = 300\n"), InvalidGrid);
  CHECK_THROWS_AS(parse_config(ok + "mass = -1\n"), InvalidUnits);
}

TEST_CASE("energy ranges") {
  auto c = parse_config("family = zero\nsubcommand = sweep\ne_min = 1\ne_max = 100\nn_energies = 3\nspacing = geometric");
  auto e = c.energies();
  REQUIRE(e.size() == 3);
  CHECK(e[0] == doctest::Approx(1));
  CHECK(e[1] == doctest::Approx(10));
  CHECK(e[2] == doctest::Approx(100));
  c.spacing = "linear";
  CHECK(c.energies()[1] == doctest::Approx(50.5));
}

TEST_CASE("resolved config round trips") {
  for (const char* text :
       {"family = tanh\nB = 1.5\nalpha = 0.3\nx0 = 0.1\nsubcommand = verify-susy\ne_min = 0.1\ne_max = 7\nhbar = 1.3",
        "family = invpow-shifted\nalpha = 2\nx0 = -3.25\nsign = -\nn = 2\nsubcommand = partners\nstep = 0.125",
        "subcommand = radial\nalpha = 1\nsign = -\npartner = 2\nenergy = 1\nr_max = 500\nmatch_tol = 1e-3",
        "subcommand = riccati\nc = 1\nw_init = 0.1\nconstant_partner = 2\nx_min = -5\nx_max = 5\noutput = out.csv"}) {
    auto a = parse_config(text);
    auto b = parse_config(render_config(a));
    CHECK(a == b);
  }
}

TEST_CASE("sweep over a vanishing superpotential") {
  auto c = parse_config("family = zero\nsubcommand = sweep\ne_min = 0.5\ne_max = 20\nn_energies = 6\nx_min = -10\nx_max = 10");
  c.workers = 3;
  std::string cols;
  auto r = rows(render_run(c), &cols);
  CHECK(cols == "E,k,k_prime,re_t,im_t,re_r,im_r,T_coeff,R_coeff,tail_residual");
  REQUIRE(r.size() == 6);
  for (const auto& row : r) {
    CHECK(row[7] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(row[8] < 1e-20);
  }
}

TEST_CASE("verify-susy for tanh(1.5) at E = 4") {
  auto c = parse_config(
      "family = tanh\nB = 1.5\nalpha = 1\nsubcommand = verify-susy\nenergy = 4\nx_min = -40\nx_max = 40\nstep = 0.01");
  std::string cols;
  auto r = rows(render_run(c), &cols);
  CHECK(cols == "E,k,k_prime,re_t,im_t,re_r,im_r,T_coeff,R_coeff,tail_residual,residual_r,residual_t,w_minus,w_plus");
  REQUIRE(r.size() == 2);
  for (const auto& row : r) {
    CHECK(row[10] < 1e-3);
    CHECK(row[11] < 1e-3);
    CHECK(row[12] == -1.5);
    CHECK(row[13] == 1.5);
  }
}

TEST_CASE("bound for tanh(2)") {
  auto c = parse_config("family = tanh\nB = 2\nalpha = 1\nsubcommand = bound\nx_min = -30\nx_max = 30\nstep = 0.01");
  std::string cols;
  auto r = rows(render_run(c), &cols);
  CHECK(cols == "n,E_n,norm_check,node_count");
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0][1]) < 1e-6);
  CHECK(std::abs(r[1][1] - 3.0) < 1e-6);
  CHECK(r[1][3] == 1);
}

TEST_CASE("partners, radial and riccati tables") {
  auto p = parse_config("family = invpow\nalpha = 1\nx0 = 1\nsubcommand = partners\nx_min = -2\nx_max = 2\nstep = 0.01\noutput_stride = 50");
  const std::string doc = render_run(p);
  std::string cols;
  auto r = rows(doc, &cols);
  CHECK(cols == "x,V1,V2");
  CHECK(r.size() == 9);
  CHECK(doc.find("# delta partner=1 position=0 strength=2\n") != std::string::npos);
  CHECK(doc.find("# delta partner=2 position=0 strength=-2\n") != std::string::npos);

  auto rad = parse_config("subcommand = radial\nalpha = 1\npartner = 1\nenergy = 1\nstep = 0.01");
  auto rr = rows(render_run(rad), &cols);
  CHECK(cols == "E,k,delta0,sigma_s");
  REQUIRE(rr.size() == 1);
  CHECK(rr[0][2] == 0.0);

  auto ric = parse_config("subcommand = riccati\nc = 1\nw_init = 0\nconstant_partner = 2\nx_min = -5\nx_max = 5\nstep = 0.01\noutput_stride = 10");
  const std::string rdoc = render_run(ric);
  auto rw = rows(rdoc, &cols);
  CHECK(cols == "x,W");
  CHECK(rw.size() == 101);
  CHECK(rdoc.find("# classification = tanh\n") != std::string::npos);
}

TEST_CASE("output is deterministic and echoes its config") {
  auto c = parse_config("family = tanh\nB = 1\nalpha = 1\nsubcommand = sweep\ne_min = 1.5\ne_max = 4\nn_energies = 3\nx_min = -30\nx_max = 30\nstep = 0.01");
  const std::string a = render_run(c);
  c.workers = 4;
  const std::string b = render_run(c);
  c.workers = 1;
  CHECK(render_run(c) == a);
  // Only the echoed workers line differs.
  CHECK(rows(a) == rows(b));
  CHECK(config_from_header(a) == c);
  CHECK(a.find("# kappa = 1\n") != std::string::npos);
  CHECK(a.find("generated") == std::string::npos);
  c.timestamp = true;
  CHECK(render_run(c).find("# generated = ") != std::string::npos);
}

TEST_CASE("exit codes") {
  std::ostringstream diag;
  const std::string cfg = temp_path("cfg.txt");
  const std::string out = temp_path("out.csv");
  auto write = [&](const std::string& text) { std::ofstream(cfg) << text; };

  write("family = zero\nsubcommand = transmit\nenergy = 1\nx_min = -5\nx_max = 5\n");
  CHECK(run_file(cfg, diag, out) == 0);
  std::ifstream in(out);
  std::stringstream got;
  got << in.rdbuf();
  CHECK(rows(got.str()).size() == 1);
  CHECK(diag.str().empty());

  write("family = zero\nsubcommand = transmit\nenergy = 1\nbogus = 1\n");
  CHECK(run_file(cfg, diag, out) == 1);
  write("family = tanh\nB = 1\nalpha = 1\nsubcommand = transmit\nenergy = 2\nx_min = -3\nx_max = 3\n");
  CHECK(run_file(cfg, diag, out) == 2);
  write("family = zero\nsubcommand = transmit\nenergy = 1\nx_min = -5\nx_max = 5\n");
  CHECK(run_file(cfg, diag, temp_path("missing_dir/out.csv")) == 3);
  CHECK(run_file(temp_path("no_such_config"), diag) == 3);

  std::istringstream lines(diag.str());
  int n = 0;
  for (std::string l; std::getline(lines, l);) {
    CHECK(l.rfind("error: ", 0) == 0);
    ++n;
  }
  CHECK(n == 4);
  std::remove(cfg.c_str());
  std::remove(out.c_str());
}
