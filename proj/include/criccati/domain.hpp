#pragma once

#include <cstddef>
#include <vector>

namespace criccati {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Axis-aligned rectangle with a base point and a sampling resolution.
///
/// For grid-backed fields (nx, ny) is the node count of the grid; for
/// expression-backed fields it is the sample set used by sampled checks
/// (nonvanishing, compatibility, residual maxima).
class DomainSpec {
 public:
  /// Throws ParameterError unless x_min < x_max, y_min < y_max, the base lies
  /// in the closed rectangle, all values are finite and nx, ny >= 3.
  DomainSpec(double x_min, double x_max, double y_min, double y_max, Point base,
             int nx, int ny);

  /// Square [-half, half]^2 centred at the origin with base (0, 0).
  static DomainSpec square(double half, int n = 21);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double y_min() const { return y_min_; }
  double y_max() const { return y_max_; }
  Point base() const { return base_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hx() const { return (x_max_ - x_min_) / (nx_ - 1); }
  double hy() const { return (y_max_ - y_min_) / (ny_ - 1); }

  double node_x(int i) const;
  double node_y(int j) const;

  /// Inside the closed rectangle, with a relative slack of 1e-12.
  bool contains(Point p) const;

  /// Same rectangle, different resolution.
  DomainSpec with_resolution(int nx, int ny) const;
  DomainSpec with_base(Point base) const;

  /// All nodes, row-major with y increasing per row.
  std::vector<Point> nodes() const;
  /// Nodes at least `margin` cells away from every edge.
  std::vector<Point> interior_nodes(int margin) const;

  bool same_rectangle(const DomainSpec& other) const;
  bool same_grid(const DomainSpec& other) const;

 private:
  double x_min_, x_max_, y_min_, y_max_;
  Point base_;
  int nx_, ny_;
};

}  // namespace criccati
