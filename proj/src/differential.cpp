#include "criccati/differential.hpp"

#include <cmath>
#include <sstream>

#include "criccati/errors.hpp"

namespace criccati {

WirtingerPair wirtinger(const ScalarField& field) {
  const ScalarField fx = 0.5 * field.dx();
  const ScalarField fy = 0.5 * field.dy();
  return {ComplexField(fx, -fy), ComplexField(fx, fy)};
}

WirtingerPair wirtinger(const ComplexField& field) {
  const ScalarField ax = field.re().dx(), ay = field.re().dy();
  const ScalarField bx = field.im().dx(), by = field.im().dy();
  return {ComplexField(0.5 * (ax + by), 0.5 * (bx - ay)),
          ComplexField(0.5 * (ax - by), 0.5 * (bx + ay))};
}

ScalarField gradient_norm_ratio(const ScalarField& f) {
  require_nonvanishing(f, "gradient_norm_ratio: f");
  const ScalarField fx = f.dx(), fy = f.dy();
  return (fx * fx + fy * fy) / (f * f);
}

SampledExtremum max_abs(const ScalarField& f, std::span<const Point> samples) {
  SampledExtremum out{-1.0, {}};
  for (const Point& p : samples) {
    const double v = std::abs(f(p));
    if (v > out.value || std::isnan(v)) out = {v, p};
    if (std::isnan(v)) break;
  }
  return out;
}

SampledExtremum min_abs(const ScalarField& f, std::span<const Point> samples) {
  SampledExtremum out{INFINITY, {}};
  for (const Point& p : samples) {
    const double v = std::abs(f(p));
    if (v < out.value || std::isnan(v)) out = {v, p};
    if (std::isnan(v)) break;
  }
  return out;
}

SampledExtremum max_modulus(const ComplexField& f, std::span<const Point> samples) {
  SampledExtremum out{-1.0, {}};
  for (const Point& p : samples) {
    const double v = std::abs(f(p));
    if (v > out.value || std::isnan(v)) out = {v, p};
    if (std::isnan(v)) break;
  }
  return out;
}

double max_abs(const ScalarField& f) { return max_abs(f, f.domain().nodes()).value; }

double max_modulus(const ComplexField& f) {
  return max_modulus(f, f.domain().nodes()).value;
}

void require_nonvanishing(const ScalarField& f, const std::string& what, double threshold) {
  const SampledExtremum m = min_abs(f, f.domain().nodes());
  if (!(m.value > threshold)) {
    std::ostringstream os;
    os << what << " vanishes: min |value| = " << m.value << " at (" << m.where.x << ", "
       << m.where.y << ")";
    throw ZeroSetError(os.str(), m.where.x, m.where.y, m.value);
  }
}

}  // namespace criccati
