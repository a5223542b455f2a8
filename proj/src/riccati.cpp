#include "criccati/riccati.hpp"

#include <sstream>

#include "criccati/differential.hpp"
#include "criccati/errors.hpp"

namespace criccati {

namespace {

const Complex kI(0.0, 1.0);

}  // namespace

RiccatiProblem::RiccatiProblem(ScalarField nu_field, DomainSpec dom)
    : RiccatiProblem(std::move(nu_field), dom, AntiderivativeConfig{dom.base(), 0.0, 1e-8}) {}

RiccatiProblem::RiccatiProblem(ScalarField nu_field, DomainSpec dom, AntiderivativeConfig c)
    : nu(std::move(nu_field)), domain(dom), cfg(c) {}

RiccatiProblem RiccatiProblem::constant(double nu, const DomainSpec& domain) {
  return RiccatiProblem(ScalarField::constant(nu, domain), domain);
}

ComplexField riccati_residual(const ComplexField& q, const RiccatiProblem& prob) {
  return d_zbar(q) + ComplexField(q.modulus_squared() - 0.25 * prob.nu);
}

ScalarField schrodinger_residual(const ScalarField& u, const RiccatiProblem& prob) {
  return prob.nu * u - u.laplacian();
}

ComplexField log_derivative(const ScalarField& u) {
  require_nonvanishing(u, "log_derivative: u");
  return d_z(u) / u;
}

ScalarField exp_reconstruct(const ComplexField& q, const RiccatiProblem& prob) {
  return exp(op_A(q, prob.cfg));
}

FactorizationTriple factorization_apply(const ComplexField& q, const ScalarField& phi,
                                        const RiccatiProblem& prob) {
  const ComplexField qbar = q.conj();
  // phi is real, so C phi = phi.
  const ComplexField inner1 = d_z(phi) - q * phi;
  const ComplexField rhs1 = d_zbar(inner1) + q * inner1.conj();
  const ComplexField inner2 = d_zbar(phi) - qbar * phi;
  const ComplexField rhs2 = d_z(inner2) + qbar * inner2.conj();
  const ComplexField lhs(0.25 * (phi.laplacian() - prob.nu * phi));
  return {lhs, rhs1, rhs2};
}

ComplexField vekua_residual(const ComplexField& w, const ScalarField& f) {
  require_nonvanishing(f, "vekua_residual: f");
  return d_zbar(w) - (d_zbar(f) / f) * w.conj();
}

ScalarField darboux_v_from_u(const ScalarField& u, const ScalarField& f,
                             const RiccatiProblem& prob) {
  require_nonvanishing(f, "darboux_v_from_u: f");
  const ComplexField arg = d_zbar(u / f) * (f * f) * kI;
  return op_Abar(arg, prob.cfg) / f;
}

ScalarField darboux_u_from_v(const ScalarField& v, const ScalarField& f,
                             const RiccatiProblem& prob) {
  require_nonvanishing(f, "darboux_u_from_v: f");
  const ComplexField arg = d_zbar(f * v) / (f * f) * kI;
  return -(f * op_Abar(arg, prob.cfg));
}

ScalarField darboux_potential_eta(const ScalarField& f, const RiccatiProblem& prob) {
  return 2.0 * gradient_norm_ratio(f) - prob.nu;
}

double require_riccati_solution(const ComplexField& q, const RiccatiProblem& prob,
                                const std::string& what, double tol) {
  const double r = max_modulus(riccati_residual(q, prob), prob.domain.nodes()).value;
  if (!(r < tol)) {
    std::ostringstream os;
    os << what << " does not solve the Riccati equation: max residual " << r << " >= " << tol;
    throw NotASolutionError(os.str(), r);
  }
  return r;
}

double require_schrodinger_solution(const ScalarField& u, const RiccatiProblem& prob,
                                    const std::string& what, double tol) {
  const double r = max_abs(schrodinger_residual(u, prob), prob.domain.nodes()).value;
  if (!(r < tol)) {
    std::ostringstream os;
    os << what << " does not solve the Schrodinger equation: max residual " << r
       << " >= " << tol;
    throw NotASolutionError(os.str(), r);
  }
  return r;
}

ComplexField euler_first_W_from_Q(const ComplexField& q, const ComplexField& q0,
                                  const RiccatiProblem& prob) {
  require_riccati_solution(q, prob, "euler_first_W_from_Q: Q");
  require_riccati_solution(q0, prob, "euler_first_W_from_Q: Q0");
  const double bound = max_modulus(q0, prob.domain.nodes()).value;
  if (!(bound <= kBoundednessLimit)) {
    std::ostringstream os;
    os << "euler_first_W_from_Q: Q0 is not bounded (max |Q0| = " << bound << ")";
    throw ParameterError(os.str());
  }
  const ScalarField a_q0 = op_A(q0, prob.cfg);
  const ScalarField a_diff = op_A(q - q0, prob.cfg);
  const ComplexField inner = d_zbar(exp(a_diff)) * exp(2.0 * a_q0) * kI;
  return {exp(op_A(q, prob.cfg)), exp(-a_q0) * op_Abar(inner, prob.cfg)};
}

ComplexField euler_first_Q_from_W(const ComplexField& w) { return log_derivative(w.re()); }

}  // namespace criccati
