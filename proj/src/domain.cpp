#include "criccati/domain.hpp"

#include <cmath>
#include <sstream>

#include "criccati/errors.hpp"

namespace criccati {

namespace {

constexpr double kSlack = 1e-12;

}  // namespace

DomainSpec::DomainSpec(double x_min, double x_max, double y_min, double y_max,
                       Point base, int nx, int ny)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), base_(base),
      nx_(nx), ny_(ny) {
  for (double v : {x_min, x_max, y_min, y_max, base.x, base.y}) {
    if (!std::isfinite(v)) throw ParameterError("domain: non-finite bound or base point");
  }
  if (!(x_min < x_max) || !(y_min < y_max)) {
    throw ParameterError("domain: empty rectangle");
  }
  if (nx < 3 || ny < 3) {
    std::ostringstream os;
    os << "domain: grid counts must be >= 3 (got " << nx << "x" << ny << ")";
    throw ParameterError(os.str());
  }
  if (!contains(base)) throw ParameterError("domain: base point outside rectangle");
}

DomainSpec DomainSpec::square(double half, int n) {
  return DomainSpec(-half, half, -half, half, Point{0.0, 0.0}, n, n);
}

double DomainSpec::node_x(int i) const {
  return i == nx_ - 1 ? x_max_ : x_min_ + i * hx();
}

double DomainSpec::node_y(int j) const {
  return j == ny_ - 1 ? y_max_ : y_min_ + j * hy();
}

bool DomainSpec::contains(Point p) const {
  const double sx = kSlack * std::max(1.0, x_max_ - x_min_);
  const double sy = kSlack * std::max(1.0, y_max_ - y_min_);
  return p.x >= x_min_ - sx && p.x <= x_max_ + sx && p.y >= y_min_ - sy &&
         p.y <= y_max_ + sy;
}

DomainSpec DomainSpec::with_resolution(int nx, int ny) const {
  return DomainSpec(x_min_, x_max_, y_min_, y_max_, base_, nx, ny);
}

DomainSpec DomainSpec::with_base(Point base) const {
  return DomainSpec(x_min_, x_max_, y_min_, y_max_, base, nx_, ny_);
}

std::vector<Point> DomainSpec::nodes() const { return interior_nodes(0); }

std::vector<Point> DomainSpec::interior_nodes(int margin) const {
  std::vector<Point> out;
  for (int j = margin; j < ny_ - margin; ++j) {
    for (int i = margin; i < nx_ - margin; ++i) out.push_back({node_x(i), node_y(j)});
  }
  return out;
}

bool DomainSpec::same_rectangle(const DomainSpec& o) const {
  return x_min_ == o.x_min_ && x_max_ == o.x_max_ && y_min_ == o.y_min_ &&
         y_max_ == o.y_max_;
}

bool DomainSpec::same_grid(const DomainSpec& o) const {
  return same_rectangle(o) && nx_ == o.nx_ && ny_ == o.ny_;
}

}  // namespace criccati
