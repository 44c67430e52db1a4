#include <doctest.h>

#include <cmath>

#include "susyqm/errors.hpp"
#include "susyqm/riccati.hpp"
#include "susyqm/scattering.hpp"

using namespace susyqm;

namespace {

double max_dev(const Eigen::VectorXd& v, double target) { return (v.array() - target).abs().maxCoeff(); }

}  // namespace

TEST_CASE("c = 1 from the origin is tanh") {
  Grid g(-10, 10, 0.01);
  auto s = integrate_riccati(1, ConstantPartner::V2, 0, 0, g, UnitSystem{});
  CHECK(s.full_range());
  CHECK(!s.escape_left);
  CHECK(!s.escape_right);
  double err = 0;
  for (Index i = 0; i < g.size(); ++i) err = std::max(err, std::abs(s.w_samples[i] - std::tanh(g.x(i))));
  CHECK(err < 1e-9);
  const auto& c = s.classification;
  CHECK(c.family == RiccatiFamily::TanhFamily);
  CHECK(c.amplitude == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(c.alpha == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(c.x0) < 1e-8);
  CHECK(c.fit_residual < 1e-8);
}

TEST_CASE("c = 0 from W = 1 is the shifted pole") {
  Grid g(-10, 10, 0.01);
  auto s = integrate_riccati(0, ConstantPartner::V2, 1, 0, g, UnitSystem{});
  CHECK(!s.full_range());
  REQUIRE(s.escape_left);
  CHECK(*s.escape_left == doctest::Approx(-1.0).epsilon(0.01));
  CHECK(s.valid_last == g.size() - 1);
  CHECK(std::isnan(s.w_samples[0]));
  for (Index i = s.valid_first; i <= s.valid_last; ++i)
    CHECK(s.w_samples[i] == doctest::Approx(1.0 / (g.x(i) + 1.0)).epsilon(1e-8));
  const auto& c = s.classification;
  CHECK(c.family == RiccatiFamily::InversePower);
  CHECK(c.x0 == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(c.sign == +1);
  CHECK(c.alpha == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(reflectionless_from_solution(s, g, UnitSystem{}), BlowupInsideGrid);
}

TEST_CASE("fixed point stays constant") {
  Grid g(-10, 10, 0.01);
  for (auto which : {ConstantPartner::V1, ConstantPartner::V2}) {
    auto s = integrate_riccati(4, which, 2, 0, g, UnitSystem{});
    CHECK(s.full_range());
    CHECK(max_dev(s.w_samples, 2.0) == 0.0);
    CHECK(s.classification.family == RiccatiFamily::ConstantW);
    CHECK(s.classification.value == 2.0);
    auto p = reflectionless_from_solution(s, g, UnitSystem{});
    CHECK(max_dev(p.v1, 4.0) < 1e-12);
    CHECK(max_dev(p.v2, 4.0) < 1e-12);
  }
}

TEST_CASE("tanh solution gives the sech^2 pair") {
  Grid g(-20, 20, 0.01);
  UnitSystem u;
  auto s = integrate_riccati(1, ConstantPartner::V2, 0, 0, g, u);
  auto p = reflectionless_from_solution(s, g, u);
  CHECK(max_dev(p.v2, 1.0) < 1e-6);
  double err = 0;
  for (Index i = 0; i < g.size(); ++i) {
    const double ch = std::cosh(g.x(i));
    err = std::max(err, std::abs(p.v1[i] - (1 - 2 / (ch * ch))));
  }
  CHECK(err < 1e-6);
  for (double e : {1.5, 3.0, 10.0}) {
    auto sol = solve_scattering({p.partner(1, false), e, u});
    CHECK(sol.transmission_coeff == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("designated partner is flat to 10 ode_tol") {
  Grid g(-10, 10, 0.001);
  UnitSystem u;
  struct Case {
    double c;
    ConstantPartner which;
    double w0, x0;
  };
  for (const Case& k : {Case{1, ConstantPartner::V2, 0, 0}, Case{4, ConstantPartner::V2, 1, 3},
                        Case{1, ConstantPartner::V1, 0.5, 0}, Case{0.25, ConstantPartner::V1, -0.2, -2}}) {
    auto s = integrate_riccati(k.c, k.which, k.w0, k.x0, g, u);
    REQUIRE(s.full_range());
    auto p = reflectionless_from_solution(s, g, u);
    const auto& flat = k.which == ConstantPartner::V1 ? p.v1 : p.v2;
    CHECK(max_dev(flat, k.c) < 10 * s.ode_tol);
  }
}

TEST_CASE("pole solution on the half-line") {
  Grid g(-0.5, 20, 0.005);
  UnitSystem u;
  auto s = integrate_riccati(0, ConstantPartner::V2, 1, 0, g, u);
  CHECK(s.full_range());
  auto p = reflectionless_from_solution(s, g, u);
  CHECK(max_dev(p.v2, 0.0) < 1e-6);
  CHECK(s.classification.family == RiccatiFamily::InversePower);
}

TEST_CASE("classification is stable under refinement") {
  UnitSystem u;
  auto a = integrate_riccati(4, ConstantPartner::V2, 1, 3, Grid(-10, 10, 0.01), u).classification;
  auto b = integrate_riccati(4, ConstantPartner::V2, 1, 3, Grid(-10, 10, 0.005), u).classification;
  REQUIRE(a.family == RiccatiFamily::TanhFamily);
  REQUIRE(b.family == RiccatiFamily::TanhFamily);
  CHECK(std::abs(a.amplitude - b.amplitude) < 1e-6 * std::abs(b.amplitude));
  CHECK(std::abs(a.alpha - b.alpha) < 1e-6 * b.alpha);
  CHECK(std::abs(a.x0 - b.x0) < 1e-6 * std::max(1.0, std::abs(b.x0)));
  // tanh(2(x - x0)) = 1/2 at x = 3.
  CHECK(b.amplitude == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(b.alpha == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(b.x0 == doctest::Approx(3.0 - std::atanh(0.5) / 2).epsilon(1e-7));
}

TEST_CASE("classifier does not force a fit") {
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(201, -5, 5);
  Eigen::VectorXd w = x.array().sin();
  auto c = classify_superpotential(x, w);
  CHECK(c.family == RiccatiFamily::Unclassified);
  CHECK(c.fit_residual > kClassifyAccept);
  Eigen::VectorXd t = (0.7 * (x.array() - 0.3)).tanh() * -1.5;
  auto ct = classify_superpotential(x, t);
  CHECK(ct.family == RiccatiFamily::TanhFamily);
  CHECK(ct.amplitude == doctest::Approx(-1.5).epsilon(1e-8));
  CHECK(ct.alpha == doctest::Approx(0.7).epsilon(1e-8));
  CHECK(ct.x0 == doctest::Approx(0.3).epsilon(1e-8));
  CHECK(std::string(to_string(RiccatiFamily::InversePower)) == "inverse-power");
}

TEST_CASE("riccati errors") {
  Grid g(-10, 10, 0.01);
  UnitSystem u;
  CHECK_THROWS_AS(integrate_riccati(0, ConstantPartner::V2, 999, 0, g, u), ImmediateBlowup);
  CHECK_THROWS_AS(integrate_riccati(0, ConstantPartner::V2, 1e6, 0, g, u), ImmediateBlowup);
  CHECK_THROWS_AS(integrate_riccati(1, ConstantPartner::V2, 0, 0.005, g, u), InvalidGrid);
  CHECK_THROWS_AS(integrate_riccati(1, ConstantPartner::V2, 0, 11, g, u), InvalidGrid);
  auto s = integrate_riccati(1, ConstantPartner::V2, 0, 0, g, u);
  CHECK_THROWS_AS(reflectionless_from_solution(s, Grid(-10, 10, 0.02), u), GridMismatch);
}
