#include "susyqm/grid.hpp"

#include <cmath>
#include <string>

#include "susyqm/errors.hpp"

namespace susyqm {

Grid::Grid(double x_min, double x_max, double step) : x_min_(x_min), step_(step), size_(0) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(step))
    throw InvalidGrid("grid bounds and step must be finite");
  if (!(step > 0.0)) throw InvalidGrid("step must be positive");
  if (!(x_min < x_max)) throw InvalidGrid("x_min must be below x_max");
  const double intervals = (x_max - x_min) / step;
  const double rounded = std::round(intervals);
  if (std::abs(intervals - rounded) > 1e-6)
    throw InvalidGrid("span " + std::to_string(x_max - x_min) + " is not a multiple of step " +
                      std::to_string(step));
  if (rounded < 100.0) throw InvalidGrid("grid needs at least 100 intervals");
  size_ = static_cast<Index>(rounded) + 1;
}

Eigen::VectorXd Grid::points() const {
  Eigen::VectorXd xs(size_);
  for (Index i = 0; i < size_; ++i) xs[i] = x(i);
  return xs;
}

std::optional<Index> Grid::node_at(double position) const {
  const double t = (position - x_min_) / step_;
  const double r = std::round(t);
  if (std::abs(t - r) > 1e-6 || r < 0.0 || r > static_cast<double>(size_ - 1)) return std::nullopt;
  return static_cast<Index>(r);
}

Grid Grid::refined(int factor) const {
  if (factor < 1) throw InvalidGrid("refinement factor must be >= 1");
  return Grid(x_min(), x_max(), step_ / factor);
}

Grid Grid::mirrored() const { return Grid(-x_max(), -x_min_, step_); }

}  // namespace susyqm
