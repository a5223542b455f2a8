#pragma once

// Grid-backed residuals used by the refinement studies: closed-form inputs are
// sampled onto a grid and every derivative is taken by finite differences.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "criccati/differential.hpp"
#include "criccati/oracle.hpp"
#include "criccati/riccati.hpp"
#include "criccati/theorems.hpp"

namespace criccati::testing {

struct GridStudy {
  std::string name;
  std::function<double(const DomainSpec& grid, std::span<const Point> probes)> residual;
};

inline DomainSpec coarse_study_grid() { return DomainSpec::square(1.0, 11); }

inline AntiderivativeConfig loose_grid_config(const DomainSpec& g) {
  // Grid compatibility residuals are O(h^2), far above the expression default.
  return AntiderivativeConfig{g.base(), 0.0, 1.0};
}

inline std::vector<GridStudy> fd_backed_studies() {
  std::vector<GridStudy> out;

  out.push_back({"riccati", [](const DomainSpec& g, std::span<const Point> pts) {
                   const OracleSolution s = separable_family(2.0, -1.0, g, PositiveBranch::kCosh);
                   const RiccatiProblem prob(s.nu, g, loose_grid_config(g));
                   const ScalarField u = ScalarField::sample(s.u, g);
                   return max_modulus(riccati_residual(log_derivative(u), prob), pts).value;
                 }});

  out.push_back({"schrodinger", [](const DomainSpec& g, std::span<const Point> pts) {
                   const OracleSolution s = separable_family(1.0, -0.5, g, PositiveBranch::kCosh);
                   const RiccatiProblem prob(s.nu, g, loose_grid_config(g));
                   return max_abs(schrodinger_residual(ScalarField::sample(s.u, g), prob), pts)
                       .value;
                 }});

  out.push_back({"factorization", [](const DomainSpec& g, std::span<const Point> pts) {
                   const OracleSolution s = exp_family(1.0, 0.5, g);
                   const RiccatiProblem prob(s.nu, g, loose_grid_config(g));
                   const ScalarField phi = ScalarField::sample(
                       ScalarField(parse_expression("sin(x)*cosh(y)"), g), g);
                   const FactorizationTriple t = factorization_apply(s.q, phi, prob);
                   return std::max(max_modulus(t.lhs - t.rhs1, pts).value,
                                   max_modulus(t.lhs - t.rhs2, pts).value);
                 }});

  out.push_back({"vekua", [](const DomainSpec& g, std::span<const Point> pts) {
                   const OracleSolution base = exp_family(1.0, 0.0, g);
                   const OracleSolution target = separable_family(1.0, 0.0, g, PositiveBranch::kCosh);
                   const ComplexField w =
                       euler_first_W_from_Q(target.q, base.q, base.problem());
                   return max_modulus(vekua_residual(ComplexField::sample(w, g),
                                                     ScalarField::sample(base.u, g)),
                                      pts)
                       .value;
                 }});

  out.push_back({"darboux", [](const DomainSpec& g, std::span<const Point> pts) {
                   const OracleSolution fs = separable_family(1.0, 0.0, g, PositiveBranch::kCosh);
                   const OracleSolution us = exp_family(1.0, 0.927295218001612, g);
                   const RiccatiProblem prob(fs.nu, g, loose_grid_config(g));
                   const ScalarField f = ScalarField::sample(fs.u, g);
                   const ScalarField u = ScalarField::sample(us.u, g);
                   const ScalarField v = darboux_v_from_u(u, f, prob);
                   const ScalarField eta = darboux_potential_eta(f, prob);
                   return max_abs(eta * v - v.laplacian(), pts).value;
                 }});

  out.push_back({"picard", [](const DomainSpec& g, std::span<const Point> pts) {
                   const std::array<ComplexField, 4> q{
                       ComplexField::sample(separable_family(1.0, 0.0, g, PositiveBranch::kCosh).q, g),
                       ComplexField::sample(separable_family(2.0, -1.0, g).q, g),
                       ComplexField::sample(separable_family(0.0, 1.0, g, PositiveBranch::kCosh).q, g),
                       ComplexField::sample(separable_family(1.5, -0.5, g).q, g)};
                   const RiccatiProblem prob = RiccatiProblem::constant(1.0, g);
                   CheckOptions o;
                   o.enforce_hypotheses = false;
                   return picard_identity(q, prob, o, std::vector<Point>(pts.begin(), pts.end()))
                       .residual;
                 }});
  return out;
}

}  // namespace criccati::testing
