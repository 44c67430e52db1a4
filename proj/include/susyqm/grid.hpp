#pragma once

#include <Eigen/Core>
#include <optional>

namespace susyqm {

using Index = Eigen::Index;

/// Uniform grid x_i = x_min + i * step, i = 0 .. size()-1.
///
/// The span (x_max - x_min) must be an integer multiple of the step (to a
/// relative 1e-6 of one step) and hold at least 100 intervals.
class Grid {
 public:
  Grid(double x_min, double x_max, double step);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_min_ + static_cast<double>(size_ - 1) * step_; }
  double step() const noexcept { return step_; }
  Index size() const noexcept { return size_; }

  double x(Index i) const noexcept { return x_min_ + static_cast<double>(i) * step_; }
  Eigen::VectorXd points() const;

  /// Node index whose coordinate equals `x` to within 1e-6 of a step.
  std::optional<Index> node_at(double x) const;

  /// Same span with the step divided by `factor`.
  Grid refined(int factor) const;

  /// Mirror image x -> -x.
  Grid mirrored() const;

  bool contains(double x) const noexcept { return x >= x_min() && x <= x_max(); }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.x_min_ == b.x_min_ && a.step_ == b.step_ && a.size_ == b.size_;
  }

 private:
  double x_min_;
  double step_;
  Index size_;
};

}  // namespace susyqm
