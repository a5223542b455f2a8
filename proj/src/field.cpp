#include "criccati/field.hpp"

#include <cmath>
#include <sstream>

#include "criccati/errors.hpp"

namespace criccati {

namespace {

constexpr double kSingularityGuard = 1e-14;
constexpr double kSnap = 1e-9;

double safe_divide(double a, double b) {
  if (!(std::abs(b) >= kSingularityGuard)) {
    std::ostringstream os;
    os << "singular quotient: |denominator| = " << std::abs(b) << " < 1e-14";
    throw SingularityError(os.str());
  }
  return a / b;
}

// Cell index and fractional offset along one axis, snapping to nodes.
std::pair<int, double> locate(double t, int n) {
  const double r = std::round(t);
  if (std::abs(t - r) < kSnap) {
    const int i = static_cast<int>(r);
    if (i >= n - 1) return {n - 2, 1.0};
    return {std::max(i, 0), 0.0};
  }
  int i = static_cast<int>(std::floor(t));
  i = std::clamp(i, 0, n - 2);
  return {i, t - i};
}

void require_resolution(const DomainSpec& d) {
  if (d.nx() < 3 || d.ny() < 3) throw ResolutionError("grid needs at least 3 nodes per axis");
}

// First derivative along a strided line of n samples with spacing h.
void diff1(const double* in, double* out, int n, int stride, double h) {
  auto at = [&](int k) { return in[k * stride]; };
  out[0] = (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
  for (int k = 1; k < n - 1; ++k) out[k * stride] = (at(k + 1) - at(k - 1)) / (2.0 * h);
  out[(n - 1) * stride] = (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * h);
}

// Second derivative along a strided line, accumulated into `out`.
void diff2_add(const double* in, double* out, int n, int stride, double h) {
  auto at = [&](int k) { return in[k * stride]; };
  const double h2 = h * h;
  for (int k = 1; k < n - 1; ++k) {
    out[k * stride] += (at(k + 1) - 2.0 * at(k) + at(k - 1)) / h2;
  }
  if (n >= 4) {
    out[0] += (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / h2;
    out[(n - 1) * stride] +=
        (2.0 * at(n - 1) - 5.0 * at(n - 2) + 4.0 * at(n - 3) - at(n - 4)) / h2;
  } else {
    const double mid = (at(2) - 2.0 * at(1) + at(0)) / h2;
    out[0] += mid;
    out[(n - 1) * stride] += mid;
  }
}

}  // namespace

ScalarField::ScalarField() : domain_(DomainSpec::square(1.0)) {}

ScalarField::ScalarField(Expression expr, DomainSpec domain)
    : domain_(domain), expr_(std::move(expr)) {}

ScalarField::ScalarField(DomainSpec grid, std::vector<double> samples)
    : domain_(grid), samples_(std::move(samples)) {
  const auto expected = static_cast<std::size_t>(grid.nx()) * grid.ny();
  if (samples_.size() != expected) {
    std::ostringstream os;
    os << "grid field: expected " << expected << " samples, got " << samples_.size();
    throw ParameterError(os.str());
  }
  for (double v : samples_) {
    if (!std::isfinite(v)) throw ParameterError("grid field: non-finite sample");
  }
}

ScalarField ScalarField::constant(double c, const DomainSpec& domain) {
  return ScalarField(Expression::constant(c), domain);
}

ScalarField ScalarField::sample(const ScalarField& source, const DomainSpec& grid) {
  if (source.is_grid() && source.domain_.same_grid(grid)) {
    return ScalarField(grid, source.samples_);
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(grid.nx()) * grid.ny());
  for (const Point& p : grid.nodes()) values.push_back(source(p));
  return ScalarField(grid, std::move(values));
}

double ScalarField::operator()(Point p) const {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !domain_.contains(p)) {
    std::ostringstream os;
    os << "point (" << p.x << ", " << p.y << ") outside domain [" << domain_.x_min()
       << ", " << domain_.x_max() << "] x [" << domain_.y_min() << ", " << domain_.y_max()
       << "]";
    throw DomainError(os.str());
  }
  if (!is_grid()) return expr_(p.x, p.y);
  const auto [i, fx] = locate((p.x - domain_.x_min()) / domain_.hx(), domain_.nx());
  const auto [j, fy] = locate((p.y - domain_.y_min()) / domain_.hy(), domain_.ny());
  if (fx == 0.0 && fy == 0.0) return node(i, j);
  return (1 - fx) * (1 - fy) * node(i, j) + fx * (1 - fy) * node(i + 1, j) +
         (1 - fx) * fy * node(i, j + 1) + fx * fy * node(i + 1, j + 1);
}

ScalarField ScalarField::dx() const {
  if (!is_grid()) return ScalarField(expr_.dx(), domain_);
  require_resolution(domain_);
  const int nx = domain_.nx(), ny = domain_.ny();
  std::vector<double> out(samples_.size());
  for (int j = 0; j < ny; ++j) {
    diff1(samples_.data() + j * nx, out.data() + j * nx, nx, 1, domain_.hx());
  }
  return ScalarField(domain_, std::move(out));
}

ScalarField ScalarField::dy() const {
  if (!is_grid()) return ScalarField(expr_.dy(), domain_);
  require_resolution(domain_);
  const int nx = domain_.nx(), ny = domain_.ny();
  std::vector<double> out(samples_.size());
  for (int i = 0; i < nx; ++i) {
    diff1(samples_.data() + i, out.data() + i, ny, nx, domain_.hy());
  }
  return ScalarField(domain_, std::move(out));
}

ScalarField ScalarField::laplacian() const {
  if (!is_grid()) return ScalarField(expr_.dx().dx() + expr_.dy().dy(), domain_);
  require_resolution(domain_);
  const int nx = domain_.nx(), ny = domain_.ny();
  std::vector<double> out(samples_.size(), 0.0);
  for (int j = 0; j < ny; ++j) {
    diff2_add(samples_.data() + j * nx, out.data() + j * nx, nx, 1, domain_.hx());
  }
  for (int i = 0; i < nx; ++i) {
    diff2_add(samples_.data() + i, out.data() + i, ny, nx, domain_.hy());
  }
  return ScalarField(domain_, std::move(out));
}

ScalarField ScalarField::with_domain(const DomainSpec& d) const {
  if (is_grid()) {
    if (!d.same_grid(domain_)) throw ParameterError("with_domain: grid mismatch");
    return ScalarField(d, samples_);
  }
  return ScalarField(expr_, d);
}

template <typename ExprOp, typename SampleOp>
ScalarField ScalarField::combine(const ScalarField& a, const ScalarField& b, ExprOp eop,
                                 SampleOp sop) {
  if (!a.is_grid() && !b.is_grid()) {
    if (!a.domain_.same_rectangle(b.domain_)) {
      throw ParameterError("field arithmetic: operands live on different rectangles");
    }
    return ScalarField(eop(a.expr_, b.expr_), a.domain_);
  }
  const DomainSpec& grid = a.is_grid() ? a.domain_ : b.domain_;
  if (a.is_grid() && b.is_grid() && !a.domain_.same_grid(b.domain_)) {
    throw ParameterError("field arithmetic: operands live on different grids");
  }
  if (!a.domain_.same_rectangle(b.domain_)) {
    throw ParameterError("field arithmetic: operands live on different rectangles");
  }
  const ScalarField sa = sample(a, grid);
  const ScalarField sb = sample(b, grid);
  std::vector<double> out(sa.samples_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = sop(sa.samples_[k], sb.samples_[k]);
  return ScalarField(grid, std::move(out));
}

template <typename ExprOp, typename SampleOp>
ScalarField ScalarField::map(ExprOp eop, SampleOp sop) const {
  if (!is_grid()) return ScalarField(eop(expr_), domain_);
  std::vector<double> out(samples_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = sop(samples_[k]);
  return ScalarField(domain_, std::move(out));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return ScalarField::combine(
      a, b, [](const Expression& p, const Expression& q) { return p + q; },
      [](double p, double q) { return p + q; });
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return ScalarField::combine(
      a, b, [](const Expression& p, const Expression& q) { return p - q; },
      [](double p, double q) { return p - q; });
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return ScalarField::combine(
      a, b, [](const Expression& p, const Expression& q) { return p * q; },
      [](double p, double q) { return p * q; });
}

ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  return ScalarField::combine(
      a, b, [](const Expression& p, const Expression& q) { return p / q; }, safe_divide);
}

ScalarField operator-(const ScalarField& a) {
  return a.map([](const Expression& p) { return -p; }, [](double p) { return -p; });
}

ScalarField operator+(const ScalarField& a, double b) {
  return a.map([b](const Expression& p) { return p + b; }, [b](double p) { return p + b; });
}

ScalarField operator*(const ScalarField& a, double b) {
  return a.map([b](const Expression& p) { return b * p; }, [b](double p) { return b * p; });
}

ScalarField operator/(double a, const ScalarField& b) {
  return b.map([a](const Expression& p) { return a / p; },
               [a](double p) { return safe_divide(a, p); });
}

ScalarField exp(const ScalarField& a) {
  return a.map([](const Expression& p) { return exp(p); },
               [](double p) { return std::exp(p); });
}

// ---------------------------------------------------------------------------

ComplexField::ComplexField(ScalarField re, ScalarField im)
    : re_(std::move(re)), im_(std::move(im)) {
  if (!re_.domain().same_rectangle(im_.domain())) {
    throw ParameterError("complex field: real and imaginary parts on different rectangles");
  }
  if (re_.is_grid() && im_.is_grid() && !re_.domain().same_grid(im_.domain())) {
    throw ParameterError("complex field: real and imaginary parts on different grids");
  }
}

ComplexField::ComplexField(ScalarField re)
    : ComplexField(re, ScalarField::constant(0.0, re.domain())) {}

ComplexField ComplexField::constant(Complex c, const DomainSpec& domain) {
  return {ScalarField::constant(c.real(), domain), ScalarField::constant(c.imag(), domain)};
}

ComplexField ComplexField::sample(const ComplexField& source, const DomainSpec& grid) {
  return {ScalarField::sample(source.re_, grid), ScalarField::sample(source.im_, grid)};
}

ComplexField operator+(const ComplexField& a, const ComplexField& b) {
  return {a.re_ + b.re_, a.im_ + b.im_};
}

ComplexField operator-(const ComplexField& a, const ComplexField& b) {
  return {a.re_ - b.re_, a.im_ - b.im_};
}

ComplexField operator*(const ComplexField& a, const ComplexField& b) {
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

ComplexField operator/(const ComplexField& a, const ComplexField& b) {
  const ScalarField den = b.modulus_squared();
  return {(a.re_ * b.re_ + a.im_ * b.im_) / den, (a.im_ * b.re_ - a.re_ * b.im_) / den};
}

ComplexField operator*(const ComplexField& a, const ScalarField& b) {
  return {a.re_ * b, a.im_ * b};
}

ComplexField operator/(const ComplexField& a, const ScalarField& b) {
  return {a.re_ / b, a.im_ / b};
}

ComplexField operator*(const ComplexField& a, Complex c) {
  return {a.re_ * c.real() - a.im_ * c.imag(), a.re_ * c.imag() + a.im_ * c.real()};
}

ComplexField operator+(const ComplexField& a, Complex c) {
  return {a.re_ + c.real(), a.im_ + c.imag()};
}

}  // namespace criccati
