#pragma once

#include <string>
#include <utility>
#include <vector>

#include "criccati/field.hpp"
#include "criccati/riccati.hpp"

namespace criccati {

/// Closed-form (u, nu, Q) triple: u solves (-Laplacian + nu) u = 0 and
/// Q = u_z / u solves the Riccati equation, all expression-backed.
struct OracleSolution {
  std::string family;
  std::vector<std::pair<std::string, double>> params;
  DomainSpec domain;
  ScalarField u;
  ScalarField nu;
  ComplexField q;
  /// False for deliberately perturbed copies.
  bool valid = true;

  RiccatiProblem problem() const { return RiccatiProblem(nu, domain); }
  /// e.g. "exp_family(nu=1, theta=0)".
  std::string label() const;
};

/// [-1, 1]^2 with base (0, 0) sampled 21 x 21.
DomainSpec default_oracle_domain();

/// u = exp(a x + b y) with a = sqrt(nu) cos(theta), b = sqrt(nu) sin(theta);
/// Q = (a - i b) / 2. Throws ParameterError for nu < 0.
OracleSolution exp_family(double nu, double theta,
                          const DomainSpec& domain = default_oracle_domain());

enum class PositiveBranch { kExp, kCosh };

/// u = X(x) Y(y) with X'' = nu1 X, Y'' = nu2 Y and nu = nu1 + nu2. Positive
/// parameters use exp (or cosh), zero gives 1, negative ones use a cosine
/// centred on the domain. Throws ParameterError when a cosine factor would
/// vanish on the domain.
OracleSolution separable_family(double nu1, double nu2,
                                const DomainSpec& domain = default_oracle_domain(),
                                PositiveBranch branch = PositiveBranch::kExp);

enum class HarmonicKind { kMonomial, kTranslate };

/// u = Re (z - shift)^n with nu = 0 (monomial forces shift = 0). Throws
/// ParameterError when n < 0 or u changes sign or nearly vanishes on the
/// domain.
OracleSolution harmonic_family(HarmonicKind kind, int n, Point shift,
                               const DomainSpec& domain = default_oracle_domain());

/// Copy with Q replaced by Q + epsilon; the result no longer solves the
/// Riccati equation. Throws ParameterError for epsilon == 0.
OracleSolution perturb(const OracleSolution& sol, double epsilon);

/// Runs the construction-time checks: Schrodinger and Riccati residuals
/// below 1e-12 and u nonvanishing on the domain nodes. Throws
/// ParameterError naming the failed invariant.
void self_check(const OracleSolution& sol);

}  // namespace criccati
