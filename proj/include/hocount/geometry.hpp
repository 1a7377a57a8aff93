#pragma once

#include <Eigen/Core>

namespace hocount {

/// Planar position in km.
using Point = Eigen::Vector2d;

/// Axis-aligned rectangle in km.
struct Window {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;

  /// Throws std::invalid_argument unless x_max > x_min and y_max > y_min.
  void validate() const;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }

  bool contains(const Point& p) const {
    return p.x() >= x_min && p.x() <= x_max && p.y() >= y_min && p.y() <= y_max;
  }
  bool contains(const Window& w) const {
    return w.x_min >= x_min && w.x_max <= x_max && w.y_min >= y_min && w.y_max <= y_max;
  }

  Window dilated(double margin) const {
    return {x_min - margin, x_max + margin, y_min - margin, y_max + margin};
  }
};

}  // namespace hocount
