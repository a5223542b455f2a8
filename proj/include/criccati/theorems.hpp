#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "criccati/contour.hpp"
#include "criccati/field.hpp"
#include "criccati/riccati.hpp"

namespace criccati {

/// (resolution, residual) rows, resolution increasing.
using RefinementTable = std::vector<std::pair<double, double>>;

struct IdentityResult {
  std::string name;
  /// Max modulus or |integral|; NaN when the identity could not be evaluated.
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  RefinementTable refinement;
  /// Why the identity failed (empty on success).
  std::string reason;
};

/// pass = residual < tolerance.
IdentityResult make_result(std::string name, double residual, double tolerance,
                           RefinementTable refinement = {});

struct CheckOptions {
  /// Checker-specific default when unset.
  std::optional<double> tolerance;
  /// When false, hypotheses are not verified and the raw identity residual is
  /// reported (used for negative controls).
  bool enforce_hypotheses = true;
  double solution_tol = kSolutionTolerance;
};

/// Sum over the pairs (1,2), (3,4), (1,4), (3,2), with signs + + - -, of
///   [d_zbar(Qi - Qj) + 2 i Im(conj(Qi) Qj)] / (Qi - Qj).
/// Each term equals -(conj(Qi) + conj(Qj)) for Riccati solutions.
ComplexField picard_sum(const std::array<ComplexField, 4>& q);
ComplexField picard_term(const ComplexField& qi, const ComplexField& qj);

/// Max modulus of picard_sum over `samples` (default: domain nodes at least
/// two cells from the boundary). Default tolerance 1e-8. Throws
/// DegeneratePairError when |Qi - Qj| <= 1e-8 for a pair in a denominator.
IdentityResult picard_identity(const std::array<ComplexField, 4>& q, const RiccatiProblem& prob,
                               const CheckOptions& opts = {},
                               std::optional<std::vector<Point>> samples = std::nullopt);

/// |Re I1| + |Im I2| with I1 = contour integral of (Q1 - Q0) exp(A[Q1 - Q0]) dz and
/// I2 = contour integral of (Q1 - Q0) exp(A[Q1 + Q0]) dz. Default tolerance 1e-10.
/// For circles the refinement table doubles the node count up to the
/// contour's own. Throws ContourError for open contours.
IdentityResult cauchy_riccati(const ComplexField& q0, const ComplexField& q1,
                              const Contour& gamma, const RiccatiProblem& prob,
                              const CheckOptions& opts = {});

/// |Re of the integral of d_z(u/f) dz| + |Im of the integral of f^2 d_z(u/f) dz|.
IdentityResult cauchy_schrodinger(const ScalarField& f, const ScalarField& u,
                                  const Contour& gamma, const RiccatiProblem& prob,
                                  const CheckOptions& opts = {});

enum class LaplaceReduction {
  /// contour integral of u_z dz = 0 for harmonic u.
  kAnalyticDerivative,
  /// Re of the contour integral of d_z(1/f) dz = 0 for nonvanishing harmonic f.
  kReciprocal,
};

/// Throws NotASolutionError when the input is not harmonic (max |Laplacian|
/// >= solution_tol on the domain nodes).
IdentityResult cauchy_laplace_reductions(
    const ScalarField& f_or_u, const Contour& gamma,
    LaplaceReduction which = LaplaceReduction::kAnalyticDerivative,
    const CheckOptions& opts = {});

/// Taylor expansion W = sum a_n (z - z0)^n of an analytic W, the classical
/// case of a formal-power expansion.
struct FormalPowerBaseline {
  Point center;
  double radius = 1.0;
  std::vector<Complex> coefficients;

  /// sum_{n <= order} a_n (z - z0)^n. Throws DomainError for |z - z0| >= R.
  Complex partial_sum(Point p, int order) const;
  /// d_z Re of the same partial sum, i.e. sum n a_n (z - z0)^(n-1) / 2.
  Complex partial_sum_dz_re(Point p, int order) const;
};

struct EulerSecondConfig {
  Point center{0.0, 0.0};
  double radius = 1.0;
  int max_order = 10;
  std::vector<Point> test_points;
  int coefficient_nodes = 128;
  /// Coefficient circle radius as a fraction of `radius`.
  double coefficient_radius_fraction = 0.1;
};

/// a_n = (1 / 2 pi i) contour integral of W / (z - z0)^(n + 1) on a circle of radius rho, trapezoid rule.
std::vector<Complex> taylor_coefficients(const ComplexField& w, Point center, double rho,
                                         int nodes, int max_order);

/// Compares Q_N = d_z Re S_N / Re S_N, where S_N is the order-N Taylor
/// partial sum, with Q = d_z Re W / Re W on the test points. The refinement
/// table holds (N, residual) for N = 0..max_order; partial sums whose real
/// part vanishes on the test points are recorded as +inf. Default tolerance
/// 1e-10.
///
/// Throws NotASolutionError when W is not analytic (|W_zbar| >= 1e-8) and
/// ZeroSetError when the final partial sum vanishes on the test points.
IdentityResult euler_second_baseline(const ComplexField& w, const EulerSecondConfig& cfg,
                                     const CheckOptions& opts = {});

/// Points on `rings` circles with radii evenly spaced in [r_inner, r_outer],
/// `per_ring` points each.
std::vector<Point> annulus_points(Point center, double r_inner, double r_outer, int rings,
                                  int per_ring);

/// n x n tensor grid on the closed rectangle.
std::vector<Point> rectangle_points(double x_min, double x_max, double y_min, double y_max,
                                    int n);

// ---------------------------------------------------------------------------
// Grid refinement studies

/// Runs `residual_on` on grids with (nx - 1) and (ny - 1) doubled `levels - 1`
/// times starting from `coarse`.
RefinementTable grid_refinement(const std::function<double(const DomainSpec&)>& residual_on,
                                const DomainSpec& coarse, int levels);

/// log2(r_k / r_{k+1}) for consecutive rows.
std::vector<double> empirical_orders(const RefinementTable& table);

}  // namespace criccati
