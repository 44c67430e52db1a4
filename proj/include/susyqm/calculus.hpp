#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <span>
#include <vector>

#include "susyqm/errors.hpp"
#include "susyqm/grid.hpp"

namespace susyqm {

template <typename Scalar>
using SampleVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace detail {

template <typename Derived>
auto stencil_derivative(const Eigen::MatrixBase<Derived>& f, Index i, Index first, Index last,
                        double h) -> typename Derived::Scalar {
  using S = typename Derived::Scalar;
  const double inv = 1.0 / (12.0 * h);
  if (i - first >= 2 && last - i >= 2)
    return (-f[i + 2] + S(8) * f[i + 1] - S(8) * f[i - 1] + f[i - 2]) * inv;
  if (i == first)
    return (S(-25) * f[i] + S(48) * f[i + 1] - S(36) * f[i + 2] + S(16) * f[i + 3] -
            S(3) * f[i + 4]) *
           inv;
  if (i == first + 1)
    return (S(-3) * f[i - 1] - S(10) * f[i] + S(18) * f[i + 1] - S(6) * f[i + 2] + f[i + 3]) *
           inv;
  if (i == last)
    return (S(25) * f[i] - S(48) * f[i - 1] + S(36) * f[i - 2] - S(16) * f[i - 3] +
            S(3) * f[i - 4]) *
           inv;
  // i == last - 1
  return (S(3) * f[i + 1] + S(10) * f[i] - S(18) * f[i - 1] + S(6) * f[i - 2] - f[i - 3]) * inv;
}

}  // namespace detail

/// Fourth-order finite-difference derivative of uniformly spaced samples.
///
/// Stencils never straddle a break node: each segment between breaks is
/// differentiated on its own with one-sided stencils at its ends, and a break
/// node receives the value from the segment to its right.
template <typename Derived>
SampleVector<typename Derived::Scalar> derivative(const Eigen::MatrixBase<Derived>& f, double h,
                                                  std::span<const Index> breaks = {}) {
  const Index n = f.size();
  std::vector<Index> cuts{0};
  for (Index b : breaks)
    if (b > 0 && b < n - 1) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(n - 1);

  SampleVector<typename Derived::Scalar> out(n);
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const Index first = cuts[s];
    const Index last = cuts[s + 1];
    if (last - first < 4) throw InvalidGrid("derivative segment shorter than five nodes");
    for (Index i = first; i <= last; ++i) out[i] = detail::stencil_derivative(f, i, first, last, h);
  }
  return out;
}

/// Composite trapezoid rule.
template <typename Derived>
typename Derived::Scalar integrate_trapezoid(const Eigen::MatrixBase<Derived>& f, double h) {
  const Index n = f.size();
  if (n < 2) return typename Derived::Scalar(0);
  return h * (f.sum() - (f[0] + f[n - 1]) * 0.5);
}

/// Squared L2 norm of samples, by the trapezoid rule.
template <typename Derived>
double norm_squared(const Eigen::MatrixBase<Derived>& f, double h) {
  const Eigen::VectorXd mod2 = f.cwiseAbs2();
  return integrate_trapezoid(mod2, h);
}

/// Composite Simpson rule; a trailing odd interval is closed with the trapezoid rule.
template <typename Derived>
typename Derived::Scalar integrate_simpson(const Eigen::MatrixBase<Derived>& f, double h) {
  using S = typename Derived::Scalar;
  const Index n = f.size();
  if (n < 3) return integrate_trapezoid(f, h);
  const Index last = (n - 1) % 2 == 0 ? n - 1 : n - 2;
  S acc = f[0] + f[last];
  for (Index i = 1; i < last; ++i) acc += (i % 2 == 1 ? S(4) : S(2)) * f[i];
  S total = acc * (h / 3.0);
  if (last != n - 1) total += (f[n - 2] + f[n - 1]) * (h * 0.5);
  return total;
}

}  // namespace susyqm
