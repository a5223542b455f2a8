#pragma once

#include <string_view>
#include <vector>

#include "criccati/field.hpp"

namespace criccati {

/// Parametric curve used for line integrals.
///
/// Circles are integrated with the trapezoid rule on `nodes` equispaced
/// parameter values (counterclockwise). Polylines are integrated with
/// composite 8-point Gauss-Legendre on `panels` panels per segment. An L-path
/// runs vertically from the base point to (x0, y) and then horizontally to
/// (x, y); without a target it is a placeholder resolved at use.
class Contour {
 public:
  enum class Kind { kCircle, kPolyline, kLPath };

  /// Throws ParameterError when radius <= 0 or nodes < 16.
  static Contour circle(Point center, double radius, int nodes);
  /// Throws ParameterError with fewer than two vertices or panels < 1.
  static Contour polyline(std::vector<Point> vertices, int panels_per_segment);
  static Contour lpath();
  static Contour lpath(Point base, Point target, int panels_per_segment = 8);

  Kind kind() const { return kind_; }
  bool closed() const;
  Point center() const { return center_; }
  double radius() const { return radius_; }
  /// Trapezoid nodes for circles, panels per segment otherwise.
  int nodes() const { return nodes_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  bool has_target() const { return kind_ != Kind::kLPath || !vertices_.empty(); }

  /// Same curve with a different node / panel count.
  Contour with_nodes(int nodes) const;

  /// Throws DomainError unless the curve lies in the closed rectangle.
  void require_inside(const DomainSpec& domain) const;

  /// `circle cx cy r n`, `polyline x1 y1 ... xk yk n_per_segment` or `lpath`.
  static Contour parse(std::string_view spec);

 private:
  Kind kind_ = Kind::kCircle;
  Point center_;
  double radius_ = 0.0;
  int nodes_ = 0;
  std::vector<Point> vertices_;
};

/// Integral of g dz along the contour.
Complex line_integral_dz(const ComplexField& g, const Contour& gamma);

/// Integral of the real 1-form p dx + q dy along the contour.
double line_integral_form(const ScalarField& p, const ScalarField& q, const Contour& gamma);

}  // namespace criccati
