#pragma once

#include <functional>
#include <span>

namespace criccati {

struct QuadratureOptions {
  /// Stop when successive dyadic levels agree to rel_tol times the L1 norm
  /// of the integrand.
  double rel_tol = 1e-10;
  /// Panel count is capped at 2^max_level.
  int max_level = 14;
};

struct QuadratureResult {
  double value = 0.0;
  int panels = 0;
  bool converged = false;
};

/// Nodes and weights of the 8-point rule on [-1, 1].
std::span<const double> gauss_legendre_8_nodes();
std::span<const double> gauss_legendre_8_weights();

/// Composite 8-point Gauss-Legendre on `panels` equal panels of [a, b].
double gauss_legendre_8(const std::function<double(double)>& g, double a, double b,
                        int panels);

/// Composite 8-point Gauss-Legendre with dyadic panel refinement (1, 2, 4, ...
/// panels). At least two levels are always compared.
QuadratureResult integrate_adaptive(const std::function<double(double)>& g, double a,
                                    double b, const QuadratureOptions& opts = {});

}  // namespace criccati
