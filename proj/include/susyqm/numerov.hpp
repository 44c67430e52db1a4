#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "susyqm/calculus.hpp"
#include "susyqm/errors.hpp"
#include "susyqm/grid.hpp"

namespace susyqm {

/// Matching point inside a Numerov sweep: psi is continuous at `node` while
/// psi'(a+) - psi'(a-) = jump * psi(a). A zero jump still restarts the
/// recurrence, which keeps fourth order across kinks of the potential.
struct Interface {
  Index node;
  double jump;
};

/// Solution samples with a separate exponent: true values are psi * exp(log_scale).
template <typename Scalar>
struct Propagation {
  SampleVector<Scalar> psi;
  double log_scale = 0.0;
};

namespace detail {

inline constexpr double kRescaleAbove = 1e150;

// Integral weights of int_0^1 (1-u) p(u) du for the cubic p through u = 0,1,2,3.
inline constexpr std::array<double, 4> kEndWeights = {97.0 / 360.0, 19.0 / 60.0, -13.0 / 120.0,
                                                      1.0 / 45.0};

inline double cubic_at(const std::array<double, 4>& v, double u) {
  const double l0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
  const double l1 = u * (u - 2.0) * (u - 3.0) / 2.0;
  const double l2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
  const double l3 = u * (u - 1.0) * (u - 2.0) / 6.0;
  return l0 * v[0] + l1 * v[1] + l2 * v[2] + l3 * v[3];
}

/// psi'(x_j) from the left: psi_j, psi_{j-1} and psi'' = f psi on nodes j .. j-3.
template <typename Scalar>
Scalar left_derivative(const Eigen::Ref<const Eigen::VectorXd>& f, const SampleVector<Scalar>& psi,
                       Index j, double h) {
  Scalar acc(0);
  for (Index m = 0; m < 4; ++m) acc += kEndWeights[m] * f[j - m] * psi[j - m];
  return (psi[j] - psi[j - 1] + h * h * acc) / h;
}

/// psi(x_j + h) from psi_j and the right-hand derivative, using f on nodes j .. j+3.
template <typename Scalar>
Scalar restart_step(const Eigen::Ref<const Eigen::VectorXd>& f, Scalar psi, Scalar dpsi, Index j,
                    double h) {
  const std::array<double, 4> fv = {f[j], f[j + 1], f[j + 2], f[j + 3]};
  const double f0 = fv[0];
  const double df0 = (-11.0 / 6.0 * fv[0] + 3.0 * fv[1] - 1.5 * fv[2] + fv[3] / 3.0) / h;
  // Four-point Gauss-Legendre on [0, 1]; exact for the degree-7 integrand.
  static constexpr std::array<double, 4> nodes = {0.0694318442029737, 0.3300094782075719,
                                                  0.6699905217924281, 0.9305681557970263};
  static constexpr std::array<double, 4> weights = {0.1739274225687269, 0.3260725774312731,
                                                    0.3260725774312731, 0.1739274225687269};
  Scalar acc(0);
  for (int q = 0; q < 4; ++q) {
    const double u = nodes[q];
    const double s = u * h;
    const Scalar local = psi + s * dpsi + (s * s / 2.0) * f0 * psi +
                         (s * s * s / 6.0) * (df0 * psi + f0 * dpsi);
    acc += weights[q] * (1.0 - u) * cubic_at(fv, u) * local;
  }
  return psi + h * dpsi + h * h * acc;
}

}  // namespace detail

/// Numerov recurrence for psi'' = f psi on a uniform grid, from psi[0], psi[1]
/// up to node `last` (entries past `last` are left at zero).
///
/// Interfaces must sit at least three nodes away from both ends of `f`.
template <typename Scalar>
Propagation<Scalar> numerov_forward(const Eigen::Ref<const Eigen::VectorXd>& f, double h,
                                    Scalar psi0, Scalar psi1,
                                    std::span<const Interface> interfaces = {}, Index last = -1) {
  const Index n = f.size();
  if (last < 0) last = n - 1;
  if (n < 2 || last >= n) throw InvalidGrid("numerov range out of bounds");

  std::vector<Interface> ifs(interfaces.begin(), interfaces.end());
  std::sort(ifs.begin(), ifs.end(), [](const Interface& a, const Interface& b) { return a.node < b.node; });
  for (std::size_t k = 0; k < ifs.size(); ++k) {
    if (ifs[k].node < 3 || ifs[k].node + 3 > n - 1)
      throw InterfaceOffGrid("interface at node " + std::to_string(ifs[k].node) +
                             " is closer than three nodes to the grid edge");
    if (k > 0 && ifs[k].node - ifs[k - 1].node < 4)
      throw InterfaceOffGrid("interfaces closer than four nodes apart");
  }

  // Summed form: z = (1 - h^2 f / 12) psi obeys z[i+1] - 2 z[i] + z[i-1] = h^2 f[i] psi[i].
  // Carrying the first difference d = z[i+1] - z[i] avoids the cancellation in
  // 12 - 10 w when h^2 f is tiny.
  const double hh = h * h;
  auto weight = [&](Index i) { return 1.0 - hh * f[i] / 12.0; };
  Propagation<Scalar> out{SampleVector<Scalar>::Zero(n), 0.0};
  auto& psi = out.psi;
  psi[0] = psi0;
  if (last >= 1) psi[1] = psi1;
  Scalar z = weight(1) * psi[1];
  Scalar d = z - weight(0) * psi[0];

  std::size_t next = 0;
  for (Index i = 1; i < last; ++i) {
    while (next < ifs.size() && ifs[next].node < i) ++next;
    if (next < ifs.size() && ifs[next].node == i) {
      const Scalar dleft = detail::left_derivative<Scalar>(f, psi, i, h);
      const Scalar dright = dleft + ifs[next].jump * psi[i];
      psi[i + 1] = detail::restart_step<Scalar>(f, psi[i], dright, i, h);
      const Scalar z_next = weight(i + 1) * psi[i + 1];
      d = z_next - z;
      z = z_next;
    } else {
      d += hh * f[i] * psi[i];
      z += d;
      psi[i + 1] = z / weight(i + 1);
    }
    if (std::abs(psi[i + 1]) > detail::kRescaleAbove) {
      psi.head(i + 2) /= detail::kRescaleAbove;
      z /= detail::kRescaleAbove;
      d /= detail::kRescaleAbove;
      out.log_scale += std::log(detail::kRescaleAbove);
    }
  }
  return out;
}

/// Mirror of numerov_forward: starts from psi[n-1], psi[n-2] and runs down to node `first`.
template <typename Scalar>
Propagation<Scalar> numerov_backward(const Eigen::Ref<const Eigen::VectorXd>& f, double h,
                                     Scalar psi_last, Scalar psi_before_last,
                                     std::span<const Interface> interfaces = {}, Index first = 0) {
  const Index n = f.size();
  // Reflection x -> -x leaves psi'' and the derivative jump condition unchanged.
  const Eigen::VectorXd reversed = f.reverse();
  std::vector<Interface> mirrored;
  mirrored.reserve(interfaces.size());
  for (const auto& i : interfaces) mirrored.push_back({n - 1 - i.node, i.jump});
  auto fwd = numerov_forward<Scalar>(reversed, h, psi_last, psi_before_last, mirrored, n - 1 - first);
  fwd.psi.reverseInPlace();
  return fwd;
}

/// Wavenumber of the discrete plane waves exp(+-i k x) that solve the Numerov
/// recurrence exactly for constant f = -k^2.
inline double numerov_wavenumber(double f, double h) {
  // 4 sin^2(k h / 2) = -h^2 f / w, which keeps full precision when k h is small.
  const double w = 1.0 - h * h * f / 12.0;
  const double s = std::sqrt(std::max(-h * h * f / (4.0 * w), 0.0));
  return 2.0 * std::asin(std::min(s, 1.0)) / h;
}

/// Decay constant of the discrete exponentials exp(+-q x) for constant f = q^2 > 0.
inline double numerov_decay(double f, double h) {
  const double w = 1.0 - h * h * f / 12.0;
  return 2.0 * std::asinh(std::sqrt(std::max(h * h * f / (4.0 * w), 0.0))) / h;
}

/// Sign changes along real samples, skipping exact zeros.
template <typename Derived>
int count_sign_changes(const Eigen::MatrixBase<Derived>& psi, double floor = 0.0) {
  int changes = 0;
  int last = 0;
  for (Index i = 0; i < psi.size(); ++i) {
    const double v = psi[i];
    if (std::abs(v) <= floor) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace susyqm
