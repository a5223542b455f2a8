#pragma once

#include "criccati/antiderivative.hpp"
#include "criccati/field.hpp"

namespace criccati {

/// Hypotheses of the form "X solves equation E" are accepted when the sampled
/// residual of E is below this value.
inline constexpr double kSolutionTolerance = 1e-6;
/// A particular solution counts as bounded when max |Q0| stays below this.
inline constexpr double kBoundednessLimit = 1e6;

/// Real potential nu on a rectangle together with the antiderivative
/// settings used by every reconstruction.
struct RiccatiProblem {
  ScalarField nu;
  DomainSpec domain;
  AntiderivativeConfig cfg;

  /// cfg.base is taken from domain.base().
  RiccatiProblem(ScalarField nu, DomainSpec domain);
  RiccatiProblem(ScalarField nu, DomainSpec domain, AntiderivativeConfig cfg);

  static RiccatiProblem constant(double nu, const DomainSpec& domain);
};

/// d_zbar Q + |Q|^2 - nu / 4.
ComplexField riccati_residual(const ComplexField& q, const RiccatiProblem& prob);

/// (-Laplacian + nu) u.
ScalarField schrodinger_residual(const ScalarField& u, const RiccatiProblem& prob);

/// Q = u_z / u. Throws ZeroSetError when u nearly vanishes on its domain
/// nodes.
ComplexField log_derivative(const ScalarField& u);

/// u = exp(A[Q]); u(x0, y0) = exp(c).
ScalarField exp_reconstruct(const ComplexField& q, const RiccatiProblem& prob);

/// The three sides of the operator factorization applied to a real phi:
///   lhs  = (Laplacian - nu) phi / 4
///   rhs1 = (d_zbar + Q C)(d_z - Q C) phi
///   rhs2 = (d_z + conj(Q) C)(d_zbar - conj(Q) C) phi
/// where C is complex conjugation. All three agree iff Q solves the Riccati
/// equation; lhs - rhs1 equals the Riccati residual times phi.
struct FactorizationTriple {
  ComplexField lhs;
  ComplexField rhs1;
  ComplexField rhs2;
};

FactorizationTriple factorization_apply(const ComplexField& q, const ScalarField& phi,
                                        const RiccatiProblem& prob);

/// W_zbar - (f_zbar / f) conj(W).
ComplexField vekua_residual(const ComplexField& w, const ScalarField& f);

/// v = Abar(i f^2 d_zbar(u / f)) / f, so that u + i v solves the Vekua
/// equation generated by f. Normalised by v(x0, y0) = c / f(x0, y0).
ScalarField darboux_v_from_u(const ScalarField& u, const ScalarField& f,
                             const RiccatiProblem& prob);

/// u = -f Abar(i f^-2 d_zbar(f v)), the inverse of darboux_v_from_u up to a
/// multiple of f.
ScalarField darboux_u_from_v(const ScalarField& v, const ScalarField& f,
                             const RiccatiProblem& prob);

/// eta = 2 (|grad f| / f)^2 - nu, the potential solved by Im W.
ScalarField darboux_potential_eta(const ScalarField& f, const RiccatiProblem& prob);

/// W = exp(A[Q]) + i exp(-A[Q0]) Abar[i exp(2 A[Q0]) d_zbar exp(A[Q - Q0])],
/// a solution of W_zbar = conj(Q0 W) with Re W = exp(A[Q]).
///
/// Throws NotASolutionError when Q or Q0 has a sampled Riccati residual of
/// 1e-6 or more, ParameterError when |Q0| exceeds 1e6 somewhere.
ComplexField euler_first_W_from_Q(const ComplexField& q, const ComplexField& q0,
                                  const RiccatiProblem& prob);

/// Q = d_z Re W / Re W.
ComplexField euler_first_Q_from_W(const ComplexField& w);

/// Throws NotASolutionError naming `what` unless the sampled Riccati residual
/// of q is below `tol`. Returns the residual.
double require_riccati_solution(const ComplexField& q, const RiccatiProblem& prob,
                                const std::string& what, double tol = kSolutionTolerance);

/// Same for the Schrodinger equation.
double require_schrodinger_solution(const ScalarField& u, const RiccatiProblem& prob,
                                    const std::string& what,
                                    double tol = kSolutionTolerance);

}  // namespace criccati
