#include "criccati/contour.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "criccati/errors.hpp"
#include "criccati/gauss_legendre.hpp"

namespace criccati {

namespace {

std::vector<std::string> tokens(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream is{std::string(text)};
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

double to_double(const std::string& t) {
  double v = 0.0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ParseError("contour: malformed number '" + t + "'");
  }
  return v;
}

int to_int(const std::string& t) {
  int v = 0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ParseError("contour: malformed integer '" + t + "'");
  }
  return v;
}

// Visits (point, dz/dt * weight) pairs of the contour quadrature.
template <typename Visit>
void for_each_node(const Contour& gamma, Visit visit) {
  if (gamma.kind() == Contour::Kind::kCircle) {
    const int n = gamma.nodes();
    const double h = 2.0 * std::numbers::pi / n;
    const double r = gamma.radius();
    for (int k = 0; k < n; ++k) {
      const double t = k * h;
      const Point p{gamma.center().x + r * std::cos(t), gamma.center().y + r * std::sin(t)};
      visit(p, Complex(-r * std::sin(t) * h, r * std::cos(t) * h));
    }
    return;
  }
  if (!gamma.has_target()) throw ContourError("L-path has no target point");
  const auto nodes = gauss_legendre_8_nodes();
  const auto weights = gauss_legendre_8_weights();
  const auto& v = gamma.vertices();
  const int panels = gamma.nodes();
  for (std::size_t s = 0; s + 1 < v.size(); ++s) {
    const Point a = v[s], b = v[s + 1];
    const Complex tangent(b.x - a.x, b.y - a.y);
    if (tangent == Complex(0.0, 0.0)) continue;
    const double dt = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = (p + 0.5) * dt;
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        const double t = mid + 0.5 * dt * nodes[k];
        const Point q{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
        visit(q, tangent * (0.5 * dt * weights[k]));
      }
    }
  }
}

}  // namespace

Contour Contour::circle(Point center, double radius, int nodes) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ParameterError("circle: radius must be > 0");
  if (nodes < 16) throw ParameterError("circle: at least 16 nodes required");
  Contour c;
  c.kind_ = Kind::kCircle;
  c.center_ = center;
  c.radius_ = radius;
  c.nodes_ = nodes;
  return c;
}

Contour Contour::polyline(std::vector<Point> vertices, int panels_per_segment) {
  if (vertices.size() < 2) throw ParameterError("polyline: at least two vertices required");
  if (panels_per_segment < 1) throw ParameterError("polyline: panels per segment must be >= 1");
  Contour c;
  c.kind_ = Kind::kPolyline;
  c.vertices_ = std::move(vertices);
  c.nodes_ = panels_per_segment;
  return c;
}

Contour Contour::lpath() {
  Contour c;
  c.kind_ = Kind::kLPath;
  c.nodes_ = 8;
  return c;
}

Contour Contour::lpath(Point base, Point target, int panels_per_segment) {
  Contour c = polyline({base, Point{base.x, target.y}, target}, panels_per_segment);
  c.kind_ = Kind::kLPath;
  return c;
}

bool Contour::closed() const {
  switch (kind_) {
    case Kind::kCircle:
      return true;
    case Kind::kPolyline:
      return vertices_.size() > 2 && vertices_.front().x == vertices_.back().x &&
             vertices_.front().y == vertices_.back().y;
    case Kind::kLPath:
      return false;
  }
  return false;
}

Contour Contour::with_nodes(int nodes) const {
  if (kind_ == Kind::kCircle) return circle(center_, radius_, nodes);
  Contour c = *this;
  if (nodes < 1) throw ParameterError("contour: panel count must be >= 1");
  c.nodes_ = nodes;
  return c;
}

void Contour::require_inside(const DomainSpec& domain) const {
  std::vector<Point> probe;
  if (kind_ == Kind::kCircle) {
    probe = {{center_.x - radius_, center_.y - radius_}, {center_.x + radius_, center_.y + radius_}};
  } else {
    probe = vertices_;
  }
  for (const Point& p : probe) {
    if (!domain.contains(p)) {
      std::ostringstream os;
      os << "contour leaves the domain near (" << p.x << ", " << p.y << ")";
      throw DomainError(os.str());
    }
  }
}

Contour Contour::parse(std::string_view spec) {
  const auto t = tokens(spec);
  if (t.empty()) throw ParseError("contour: empty specification");
  if (t[0] == "circle") {
    if (t.size() != 5) throw ParseError("contour: expected 'circle cx cy r n'");
    return circle({to_double(t[1]), to_double(t[2])}, to_double(t[3]), to_int(t[4]));
  }
  if (t[0] == "polyline") {
    if (t.size() < 6 || t.size() % 2 != 0) {
      throw ParseError("contour: expected 'polyline x1 y1 x2 y2 ... n_per_segment'");
    }
    std::vector<Point> v;
    for (std::size_t k = 1; k + 1 < t.size(); k += 2) v.push_back({to_double(t[k]), to_double(t[k + 1])});
    return polyline(std::move(v), to_int(t.back()));
  }
  if (t[0] == "lpath") {
    if (t.size() != 1) throw ParseError("contour: 'lpath' takes no arguments");
    return lpath();
  }
  throw ParseError("contour: unknown kind '" + t[0] + "'");
}

Complex line_integral_dz(const ComplexField& g, const Contour& gamma) {
  gamma.require_inside(g.domain());
  Complex sum(0.0, 0.0);
  for_each_node(gamma, [&](Point p, Complex dz) { sum += g(p) * dz; });
  return sum;
}

double line_integral_form(const ScalarField& p, const ScalarField& q, const Contour& gamma) {
  gamma.require_inside(p.domain());
  gamma.require_inside(q.domain());
  double sum = 0.0;
  for_each_node(gamma, [&](Point pt, Complex dz) {
    sum += p(pt) * dz.real() + q(pt) * dz.imag();
  });
  return sum;
}

}  // namespace criccati
