#pragma once

#include <span>
#include <string>

#include "criccati/field.hpp"

namespace criccati {

/// d_z = (d_x - i d_y) / 2 and d_zbar = (d_x + i d_y) / 2.
struct WirtingerPair {
  ComplexField d_z;
  ComplexField d_zbar;
};

WirtingerPair wirtinger(const ScalarField& field);
WirtingerPair wirtinger(const ComplexField& field);
inline ComplexField d_z(const ComplexField& f) { return wirtinger(f).d_z; }
inline ComplexField d_zbar(const ComplexField& f) { return wirtinger(f).d_zbar; }
inline ComplexField d_z(const ScalarField& f) { return wirtinger(f).d_z; }
inline ComplexField d_zbar(const ScalarField& f) { return wirtinger(f).d_zbar; }

inline ScalarField laplacian(const ScalarField& field) { return field.laplacian(); }

/// (|grad f| / f)^2. Throws ZeroSetError when min |f| over the domain nodes
/// is at most 1e-10.
ScalarField gradient_norm_ratio(const ScalarField& f);

struct SampledExtremum {
  double value = 0.0;
  Point where;
};

SampledExtremum max_abs(const ScalarField& f, std::span<const Point> samples);
SampledExtremum min_abs(const ScalarField& f, std::span<const Point> samples);
SampledExtremum max_modulus(const ComplexField& f, std::span<const Point> samples);

/// Largest |value| over the field's own domain nodes.
double max_abs(const ScalarField& f);
double max_modulus(const ComplexField& f);

inline constexpr double kNonvanishingThreshold = 1e-10;

/// Throws ZeroSetError (naming `what` and the location of the minimum) when
/// min |f| over the domain nodes is at most `threshold`.
void require_nonvanishing(const ScalarField& f, const std::string& what,
                          double threshold = kNonvanishingThreshold);

}  // namespace criccati
