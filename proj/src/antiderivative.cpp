#include "criccati/antiderivative.hpp"

#include <cmath>
#include <sstream>

#include "criccati/differential.hpp"
#include "criccati/errors.hpp"

namespace criccati {

namespace {

// Integral of the piecewise-linear interpolant of `v` (nodes lo + k h) from
// `anchor` to every node.
std::vector<double> cumulative_from(const std::vector<double>& v, double lo, double h,
                                    double anchor) {
  const int n = static_cast<int>(v.size());
  std::vector<double> c(v.size(), 0.0);
  for (int k = 1; k < n; ++k) c[k] = c[k - 1] + 0.5 * h * (v[k - 1] + v[k]);
  const double t = (anchor - lo) / h;
  int k = std::clamp(static_cast<int>(std::floor(t)), 0, n - 2);
  const double frac = std::clamp(t - k, 0.0, 1.0);
  const double v_anchor = v[k] + frac * (v[k + 1] - v[k]);
  const double c_anchor = c[k] + 0.5 * frac * h * (v[k] + v_anchor);
  for (double& x : c) x -= c_anchor;
  return c;
}

ScalarField antiderivative(const ComplexField& phi, Compatibility which,
                           const AntiderivativeConfig& cfg, const char* name) {
  const DomainSpec& dom = phi.domain();
  if (!dom.contains(cfg.base)) {
    std::ostringstream os;
    os << name << ": base point (" << cfg.base.x << ", " << cfg.base.y << ") outside domain";
    throw DomainError(os.str());
  }
  const double residual = compatibility_check(phi, which);
  if (!(residual <= cfg.compat_tol)) {
    std::ostringstream os;
    os << name << ": compatibility condition violated, max residual " << residual
       << " > tolerance " << cfg.compat_tol;
    throw CompatibilityError(os.str(), residual);
  }
  const double sign = which == Compatibility::kAbar ? 1.0 : -1.0;
  const DomainSpec out_domain = dom.with_base(cfg.base);

  if (!phi.is_grid()) {
    const Expression& p1 = *phi.re().expression();
    const Expression& p2 = *phi.im().expression();
    const Expression horizontal = Expression::integral_x(p1, cfg.base.x);
    const Expression vertical =
        Expression::integral_y(Expression::at_x(p2, cfg.base.x), cfg.base.y);
    return ScalarField(2.0 * (horizontal + sign * vertical) + cfg.constant_c, out_domain);
  }

  const ComplexField g = ComplexField::sample(phi, dom);
  const int nx = dom.nx(), ny = dom.ny();
  std::vector<double> column(ny);
  for (int j = 0; j < ny; ++j) column[j] = g.im()(cfg.base.x, dom.node_y(j));
  const auto vertical = cumulative_from(column, dom.y_min(), dom.hy(), cfg.base.y);
  std::vector<double> out(static_cast<std::size_t>(nx) * ny);
  std::vector<double> row(nx);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) row[i] = g.re().node(i, j);
    const auto horizontal = cumulative_from(row, dom.x_min(), dom.hx(), cfg.base.x);
    for (int i = 0; i < nx; ++i) {
      out[j * nx + i] = 2.0 * (horizontal[i] + sign * vertical[j]) + cfg.constant_c;
    }
  }
  return ScalarField(out_domain, std::move(out));
}

}  // namespace

double compatibility_check(const ComplexField& phi, Compatibility which) {
  const ScalarField a = phi.re().dy();
  const ScalarField b = phi.im().dx();
  const ScalarField r = which == Compatibility::kAbar ? a - b : a + b;
  return max_abs(r);
}

ScalarField op_Abar(const ComplexField& phi, const AntiderivativeConfig& cfg) {
  return antiderivative(phi, Compatibility::kAbar, cfg, "op_Abar");
}

ScalarField op_A(const ComplexField& phi, const AntiderivativeConfig& cfg) {
  return antiderivative(phi, Compatibility::kA, cfg, "op_A");
}

double antiderivative_along(const ComplexField& phi, Compatibility which,
                            const AntiderivativeConfig& cfg, const Contour& path) {
  if (path.kind() == Contour::Kind::kCircle || !path.has_target()) {
    throw ContourError("antiderivative path must be a polyline with an end point");
  }
  const Point start = path.vertices().front();
  if (start.x != cfg.base.x || start.y != cfg.base.y) {
    throw ContourError("antiderivative path must start at the base point");
  }
  const double residual = compatibility_check(phi, which);
  if (!(residual <= cfg.compat_tol)) {
    std::ostringstream os;
    os << "antiderivative_along: compatibility condition violated, max residual " << residual;
    throw CompatibilityError(os.str(), residual);
  }
  const double sign = which == Compatibility::kAbar ? 1.0 : -1.0;
  return 2.0 * line_integral_form(phi.re(), sign * phi.im(), path) + cfg.constant_c;
}

}  // namespace criccati
