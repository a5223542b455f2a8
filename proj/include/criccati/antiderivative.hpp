#pragma once

#include "criccati/contour.hpp"
#include "criccati/field.hpp"

namespace criccati {

struct AntiderivativeConfig {
  Point base{0.0, 0.0};
  /// Value of the reconstructed potential at the base point.
  double constant_c = 0.0;
  /// Largest accepted compatibility residual.
  double compat_tol = 1e-8;
};

/// Which real 1-form must be closed for the antiderivative to be
/// path-independent.
enum class Compatibility {
  /// d_y Phi1 - d_x Phi2 = 0, needed by op_Abar (Phi1 dx + Phi2 dy closed).
  kAbar,
  /// d_y Phi1 + d_x Phi2 = 0, needed by op_A (Phi1 dx - Phi2 dy closed).
  kA,
};

/// max |d_y Phi1 -+ d_x Phi2| over the nodes of Phi's domain.
double compatibility_check(const ComplexField& phi, Compatibility which);

/// Real phi with d_zbar phi = Phi:
///   phi(x, y) = 2 (int_{x0}^{x} Phi1(s, y) ds + int_{y0}^{y} Phi2(x0, s) ds) + c.
/// Expression-backed input yields an expression with integral nodes (exact
/// derivatives, quadrature values); grid-backed input is integrated exactly
/// on its bilinear interpolant and yields a grid.
///
/// Throws CompatibilityError when the residual exceeds cfg.compat_tol and
/// DomainError when the base point lies outside the domain.
ScalarField op_Abar(const ComplexField& phi, const AntiderivativeConfig& cfg);

/// Real phi with d_z phi = Phi:
///   phi(x, y) = 2 (int_{x0}^{x} Phi1(s, y) ds - int_{y0}^{y} Phi2(x0, s) ds) + c.
ScalarField op_A(const ComplexField& phi, const AntiderivativeConfig& cfg);

/// The same antiderivative evaluated at the end point of an arbitrary
/// polyline starting at the base point: 2 int (Phi1 dx +- Phi2 dy) + c.
/// Used to test path independence.
double antiderivative_along(const ComplexField& phi, Compatibility which,
                            const AntiderivativeConfig& cfg, const Contour& path);

}  // namespace criccati
