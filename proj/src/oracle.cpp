#include "criccati/oracle.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "criccati/differential.hpp"
#include "criccati/errors.hpp"

namespace criccati {

namespace {

constexpr double kOracleTolerance = 1e-12;

std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// One factor of a separable solution: the function and its logarithmic
// derivative, as expressions in `t`.
struct Factor {
  Expression value;
  Expression log_derivative;
};

Factor separable_factor(double nu, const Expression& t, double lo, double hi,
                        PositiveBranch branch, const char* axis) {
  if (nu > 0.0) {
    const double k = std::sqrt(nu);
    if (branch == PositiveBranch::kCosh) return {cosh(k * t), k * tanh(k * t)};
    return {exp(k * t), Expression::constant(k)};
  }
  if (nu == 0.0) return {Expression::constant(1.0), Expression()};
  const double k = std::sqrt(-nu);
  const double centre = 0.5 * (lo + hi);
  if (k * 0.5 * (hi - lo) >= 0.5 * std::numbers::pi * (1.0 - 1e-6)) {
    std::ostringstream os;
    os << "separable_family: cos factor in " << axis << " vanishes on the domain (k = " << k
       << ")";
    throw ParameterError(os.str());
  }
  const Expression arg = k * (t - centre);
  return {cos(arg), -k * tan(arg)};
}

}  // namespace

std::string OracleSolution::label() const {
  std::string out = family + "(";
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (k) out += ", ";
    out += params[k].first + "=" + num(params[k].second);
  }
  return out + ")";
}

DomainSpec default_oracle_domain() { return DomainSpec::square(1.0, 21); }

void self_check(const OracleSolution& sol) {
  const auto nodes = sol.domain.nodes();
  const RiccatiProblem prob = sol.problem();
  const double schrod = max_abs(schrodinger_residual(sol.u, prob), nodes).value;
  if (!(schrod < kOracleTolerance)) {
    throw ParameterError(sol.label() + ": Schrodinger residual " + num(schrod) +
                         " exceeds 1e-12");
  }
  const double ric = max_modulus(riccati_residual(sol.q, prob), nodes).value;
  if (!(ric < kOracleTolerance)) {
    throw ParameterError(sol.label() + ": Riccati residual " + num(ric) + " exceeds 1e-12");
  }
  const double umin = min_abs(sol.u, nodes).value;
  if (!(umin > kNonvanishingThreshold)) {
    throw ParameterError(sol.label() + ": u vanishes on the domain");
  }
}

OracleSolution exp_family(double nu, double theta, const DomainSpec& domain) {
  if (!(nu >= 0.0)) throw ParameterError("exp_family: nu must be >= 0");
  const double a = std::sqrt(nu) * std::cos(theta);
  const double b = std::sqrt(nu) * std::sin(theta);
  OracleSolution sol{"exp_family",
                     {{"nu", nu}, {"theta", theta}},
                     domain,
                     ScalarField(exp(a * Expression::x() + b * Expression::y()), domain),
                     ScalarField::constant(nu, domain),
                     ComplexField::constant(Complex(a / 2, -b / 2), domain)};
  self_check(sol);
  return sol;
}

OracleSolution separable_family(double nu1, double nu2, const DomainSpec& domain,
                                PositiveBranch branch) {
  const Factor fx = separable_factor(nu1, Expression::x(), domain.x_min(), domain.x_max(),
                                     branch, "x");
  const Factor fy = separable_factor(nu2, Expression::y(), domain.y_min(), domain.y_max(),
                                     branch, "y");
  OracleSolution sol{"separable",
                     {{"nu1", nu1}, {"nu2", nu2}},
                     domain,
                     ScalarField(fx.value * fy.value, domain),
                     ScalarField::constant(nu1 + nu2, domain),
                     ComplexField(ScalarField(0.5 * fx.log_derivative, domain),
                                  ScalarField(-0.5 * fy.log_derivative, domain))};
  if (branch == PositiveBranch::kCosh) sol.params.push_back({"cosh", 1.0});
  self_check(sol);
  return sol;
}

OracleSolution harmonic_family(HarmonicKind kind, int n, Point shift, const DomainSpec& domain) {
  if (n < 0) throw ParameterError("harmonic_family: n must be >= 0");
  if (kind == HarmonicKind::kMonomial) shift = Point{0.0, 0.0};
  const Expression wx = Expression::x() - shift.x;
  const Expression wy = Expression::y() - shift.y;
  // (re_k + i im_k) = (z - shift)^k
  Expression re = Expression::constant(1.0), im;
  Expression re_prev, im_prev;
  for (int k = 0; k < n; ++k) {
    re_prev = re;
    im_prev = im;
    re = re_prev * wx - im_prev * wy;
    im = re_prev * wy + im_prev * wx;
  }
  const ScalarField u(re, domain);

  // Sign changes on a fine sample reveal zero lines crossing the domain.
  const DomainSpec fine = domain.with_resolution(101, 101);
  double lo = INFINITY, hi = -INFINITY;
  for (const Point& p : fine.nodes()) {
    const double v = re(p.x, p.y);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo > kNonvanishingThreshold || hi < -kNonvanishingThreshold)) {
    std::ostringstream os;
    os << "harmonic_family: Re(z - (" << shift.x << ", " << shift.y << "))^" << n
       << " vanishes on the domain";
    throw ParameterError(os.str());
  }

  ComplexField q = ComplexField::constant(0.0, domain);
  if (n > 0) {
    const double half_n = 0.5 * n;
    q = ComplexField(ScalarField(half_n * re_prev / re, domain),
                     ScalarField(half_n * im_prev / re, domain));
  }
  OracleSolution sol{kind == HarmonicKind::kMonomial ? "harmonic_monomial" : "harmonic",
                     {{"n", static_cast<double>(n)}, {"sx", shift.x}, {"sy", shift.y}},
                     domain,
                     u,
                     ScalarField::constant(0.0, domain),
                     q};
  self_check(sol);
  return sol;
}

OracleSolution perturb(const OracleSolution& sol, double epsilon) {
  if (epsilon == 0.0) throw ParameterError("perturb: epsilon must be nonzero");
  OracleSolution out = sol;
  out.family = "perturbed_" + sol.family;
  out.params.push_back({"epsilon", epsilon});
  out.q = sol.q + Complex(epsilon, 0.0);
  out.valid = false;
  return out;
}

}  // namespace criccati
