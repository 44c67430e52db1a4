#include "susyqm/riccati.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "susyqm/errors.hpp"

namespace susyqm {

const char* to_string(RiccatiFamily f) {
  switch (f) {
    case RiccatiFamily::ConstantW: return "constant";
    case RiccatiFamily::TanhFamily: return "tanh";
    case RiccatiFamily::InversePower: return "inverse-power";
    case RiccatiFamily::Unclassified: return "unclassified";
  }
  return "?";
}

namespace {

// ---- fits ----

double rms(const Eigen::VectorXd& v) { return std::sqrt(v.squaredNorm() / static_cast<double>(v.size())); }

double relative_misfit(const Eigen::VectorXd& fit, const Eigen::VectorXd& w) {
  const double scale = rms(w);
  const double miss = rms(fit - w);
  if (scale == 0.0) return miss == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  const double r = miss / scale;
  return std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
}

struct TanhResidual : Eigen::DenseFunctor<double> {
  const Eigen::VectorXd& x;
  const Eigen::VectorXd& w;
  TanhResidual(const Eigen::VectorXd& x_, const Eigen::VectorXd& w_)
      : DenseFunctor(3, static_cast<int>(x_.size())), x(x_), w(w_) {}
  int operator()(const InputType& p, ValueType& r) const {
    r = (p[0] * (p[1] * (x.array() - p[2])).tanh() - w.array()).matrix();
    return 0;
  }
  int df(const InputType& p, JacobianType& j) const {
    const Eigen::ArrayXd d = x.array() - p[2];
    const Eigen::ArrayXd t = (p[1] * d).tanh();
    const Eigen::ArrayXd s = 1.0 - t * t;
    j.col(0) = t.matrix();
    j.col(1) = (p[0] * s * d).matrix();
    j.col(2) = (-p[0] * p[1] * s).matrix();
    return 0;
  }
};

struct PoleResidual : Eigen::DenseFunctor<double> {
  const Eigen::VectorXd& x;
  const Eigen::VectorXd& w;
  PoleResidual(const Eigen::VectorXd& x_, const Eigen::VectorXd& w_)
      : DenseFunctor(2, static_cast<int>(x_.size())), x(x_), w(w_) {}
  int operator()(const InputType& p, ValueType& r) const {
    r = (p[0] / (x.array() - p[1]) - w.array()).matrix();
    return 0;
  }
  int df(const InputType& p, JacobianType& j) const {
    const Eigen::ArrayXd inv = 1.0 / (x.array() - p[1]);
    j.col(0) = inv.matrix();
    j.col(1) = (p[0] * inv * inv).matrix();
    return 0;
  }
};

template <typename Functor>
void refine(Functor& fn, Eigen::VectorXd& p) {
  Eigen::LevenbergMarquardt<Functor> lm(fn);
  lm.setXtol(1e-15);
  lm.setFtol(1e-15);
  lm.setGtol(0.0);
  lm.setMaxfev(400);
  lm.minimize(p);
}

void fit_tanh(const Eigen::VectorXd& x, const Eigen::VectorXd& w, RiccatiClassification& out) {
  const Index n = x.size();
  const double lo = w.minCoeff(), hi = w.maxCoeff();
  if (hi - lo <= 0.0 || n < 5) return;
  const double mid = 0.5 * (hi + lo);
  Index c = 0;
  (w.array() - mid).abs().minCoeff(&c);
  c = std::clamp<Index>(c, 1, n - 2);
  const double slope = (w[c + 1] - w[c - 1]) / (x[c + 1] - x[c - 1]);
  double b = 0.5 * (hi - lo) * (slope >= 0.0 ? 1.0 : -1.0);
  double a = slope / b;
  if (!(a > 0.0) || !std::isfinite(a)) a = 1.0;

  Eigen::VectorXd p(3);
  p << b, a, x[c];
  TanhResidual fn(x, w);
  refine(fn, p);
  if (p[1] < 0.0) {
    p[0] = -p[0];
    p[1] = -p[1];
  }
  const Eigen::VectorXd fit = p[0] * (p[1] * (x.array() - p[2])).tanh();
  out.residual_tanh = relative_misfit(fit, w);
  if (out.residual_tanh <= out.fit_residual) {
    out.fit_residual = out.residual_tanh;
    out.family = RiccatiFamily::TanhFamily;
    out.amplitude = p[0];
    out.alpha = p[1];
    out.x0 = p[2];
  }
}

void fit_pole(const Eigen::VectorXd& x, const Eigen::VectorXd& w, RiccatiClassification& out) {
  // 1/W = (x - x0)/A is linear in x, which gives the starting point.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (Index i = 0; i < x.size(); ++i) {
    if (std::abs(w[i]) < 1e-300) continue;
    const double y = 1.0 / w[i];
    sx += x[i];
    sy += y;
    sxx += x[i] * x[i];
    sxy += x[i] * y;
    ++m;
  }
  const double den = m * sxx - sx * sx;
  if (m < 5 || den == 0.0) return;
  const double slope = (m * sxy - sx * sy) / den;
  const double icept = (sy - slope * sx) / m;
  if (slope == 0.0 || !std::isfinite(slope)) return;

  Eigen::VectorXd p(2);
  p << 1.0 / slope, -icept / slope;
  PoleResidual fn(x, w);
  refine(fn, p);
  // A pole inside the sampled range is not a fit of finite data.
  if (p[1] >= x.minCoeff() && p[1] <= x.maxCoeff()) return;
  const Eigen::VectorXd fit = (p[0] / (x.array() - p[1])).matrix();
  out.residual_inverse_power = relative_misfit(fit, w);
  if (out.residual_inverse_power < out.fit_residual) {
    out.fit_residual = out.residual_inverse_power;
    out.family = RiccatiFamily::InversePower;
    out.alpha = std::abs(p[0]);
    out.sign = p[0] >= 0.0 ? 1 : -1;
    out.x0 = p[1];
    out.amplitude = 0.0;
  }
}

// ---- Dormand-Prince 5(4) ----

struct DormandPrince {
  double c;
  double sign;  // +1: W' = (W^2 - c)/kappa, -1: W' = (c - W^2)/kappa
  double kappa;
  double tol;
  double cap;

  double rhs(double w) const { return sign * (w * w - c) / kappa; }

  /// Advances w from x to x + span. Returns false if |W| passed the cap, with
  /// `escape` set to where that happened.
  bool advance(double& w, double x, double span, double& h_try, double& escape) const {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double dir = span > 0 ? 1.0 : -1.0;
    double done = 0.0;
    const double total = std::abs(span);
    double h = std::min(std::abs(h_try), total);
    while (done < total) {
      const bool last = h >= total - done;
      if (last) h = total - done;
      const double hs = dir * h;
      const double k1 = rhs(w);
      const double k2 = rhs(w + hs * a21 * k1);
      const double k3 = rhs(w + hs * (a31 * k1 + a32 * k2));
      const double k4 = rhs(w + hs * (a41 * k1 + a42 * k2 + a43 * k3));
      const double k5 = rhs(w + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const double k6 = rhs(w + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const double w5 = w + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const double k7 = rhs(w5);
      const double err = std::abs(hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
      const double scale = tol * std::max(1.0, std::max(std::abs(w), std::abs(w5)));
      const double ratio = std::isfinite(err) ? err / scale : std::numeric_limits<double>::infinity();

      if (ratio <= 1.0) {
        done += h;
        w = w5;
        if (!(std::abs(w) <= cap)) {
          escape = x + dir * done;
          return false;
        }
        if (!last) h_try = h;
      }
      const double grow = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
      h *= grow;
      if (h < 1e-14 * std::max(1.0, std::abs(x))) {
        escape = x + dir * done;
        return false;
      }
    }
    return true;
  }
};

}  // namespace

RiccatiClassification classify_superpotential(const Eigen::VectorXd& x, const Eigen::VectorXd& w,
                                              double accept) {
  RiccatiClassification out;
  if (x.size() != w.size() || x.size() == 0) throw GridMismatch("classification samples differ in length");

  const double mean = w.mean();
  out.residual_constant = relative_misfit(Eigen::VectorXd::Constant(w.size(), mean), w);
  if (out.residual_constant < accept) {
    out.family = RiccatiFamily::ConstantW;
    out.value = mean;
    out.fit_residual = out.residual_constant;
    return out;
  }
  out.fit_residual = std::numeric_limits<double>::infinity();
  fit_tanh(x, w, out);
  fit_pole(x, w, out);
  if (out.residual_constant < out.fit_residual) {
    out.fit_residual = out.residual_constant;
    out.family = RiccatiFamily::ConstantW;
    out.value = mean;
  }
  if (!(out.fit_residual < accept)) out.family = RiccatiFamily::Unclassified;
  return out;
}

RiccatiSolution integrate_riccati(double c, ConstantPartner which, double w_init, double x_init,
                                  const Grid& grid, const UnitSystem& units, const RiccatiOptions& options) {
  if (!std::isfinite(c) || !std::isfinite(w_init)) throw InvalidParameter("c and w_init must be finite");
  const auto start = grid.node_at(x_init);
  if (!start) throw InvalidGrid("x_init = " + std::to_string(x_init) + " is not a grid node");

  RiccatiSolution s{c, which, w_init, x_init, grid, units,
                    Eigen::VectorXd::Constant(grid.size(), std::numeric_limits<double>::quiet_NaN()),
                    *start, *start, std::nullopt, std::nullopt,
                    options.blowup_cap.value_or(1e3 * std::max(std::sqrt(std::abs(c)), 1.0)),
                    options.ode_tol, {}};
  if (!(std::abs(w_init) <= s.blowup_cap))
    throw ImmediateBlowup("|w_init| already exceeds the blow-up cap " + std::to_string(s.blowup_cap));

  const DormandPrince dp{c, which == ConstantPartner::V1 ? 1.0 : -1.0, units.kappa(), options.ode_tol,
                         s.blowup_cap};
  const double h = grid.step();
  s.w_samples[*start] = w_init;

  for (int dir : {1, -1}) {
    double w = w_init;
    double h_try = h;
    Index i = *start;
    while (true) {
      const Index j = i + dir;
      if (j < 0 || j >= grid.size()) break;
      double escape = 0.0;
      if (!dp.advance(w, grid.x(i), dir * h, h_try, escape)) {
        if (i == *start)
          throw ImmediateBlowup("solution leaves |W| <= " + std::to_string(s.blowup_cap) + " within one step of x_init");
        (dir > 0 ? s.escape_right : s.escape_left) = escape;
        break;
      }
      s.w_samples[j] = w;
      i = j;
    }
    (dir > 0 ? s.valid_last : s.valid_first) = i;
  }

  const Index len = s.valid_last - s.valid_first + 1;
  const Eigen::VectorXd xs = grid.points().segment(s.valid_first, len);
  s.classification = classify_superpotential(xs, s.w_samples.segment(s.valid_first, len), options.accept);
  return s;
}

PartnerPotentials reflectionless_from_solution(const RiccatiSolution& s, const Grid& grid,
                                               const UnitSystem& units) {
  if (!(grid == s.grid)) throw GridMismatch("grid differs from the grid of the Riccati solution");
  if (!(units == s.units)) throw InvalidUnits("units differ from those of the Riccati solution");
  if (!s.full_range()) {
    const double where = s.escape_left ? *s.escape_left : s.escape_right.value_or(grid.x(s.valid_last));
    throw BlowupInsideGrid("solution escapes at x = " + std::to_string(where) + ", inside the grid");
  }
  return build_partners(SampledSuperpotential{grid, s.w_samples}, units);
}

}  // namespace susyqm
