#include "criccati/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "criccati/differential.hpp"
#include "criccati/errors.hpp"

namespace criccati {

namespace {

constexpr double kDegeneracyThreshold = 1e-8;
constexpr double kAnalyticityThreshold = 1e-8;

double tolerance_or(const CheckOptions& opts, double fallback) {
  const double tol = opts.tolerance.value_or(fallback);
  if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
  return tol;
}

void require_closed(const Contour& gamma) {
  if (!gamma.closed()) throw ContourError("contour not closed");
}

// Node counts n, n/2, n/4, ... down to 16, ascending. Non-circles get one row.
std::vector<int> node_ladder(const Contour& gamma) {
  std::vector<int> out{gamma.nodes()};
  if (gamma.kind() == Contour::Kind::kCircle) {
    int n = gamma.nodes();
    while (n % 2 == 0 && n / 2 >= 16) {
      n /= 2;
      out.push_back(n);
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

template <typename Residual>
IdentityResult contour_study(std::string name, const Contour& gamma, double tol,
                             Residual residual_at) {
  RefinementTable table;
  for (int n : node_ladder(gamma)) {
    const Contour g = gamma.kind() == Contour::Kind::kCircle ? gamma.with_nodes(n) : gamma;
    table.emplace_back(static_cast<double>(n), residual_at(g));
  }
  const double r = table.back().second;
  return make_result(std::move(name), r, tol, std::move(table));
}

}  // namespace

IdentityResult make_result(std::string name, double residual, double tolerance,
                           RefinementTable refinement) {
  IdentityResult r;
  r.name = std::move(name);
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = residual < tolerance;
  r.refinement = std::move(refinement);
  if (!r.pass) {
    std::ostringstream os;
    os << "residual " << residual << " >= tolerance " << tolerance;
    r.reason = os.str();
  }
  return r;
}

ComplexField picard_term(const ComplexField& qi, const ComplexField& qj) {
  const ComplexField diff = qi - qj;
  const ComplexField cross = qi.conj() * qj;
  const ComplexField two_i_im{ScalarField::constant(0.0, qi.domain()), 2.0 * cross.im()};
  return (d_zbar(diff) + two_i_im) / diff;
}

ComplexField picard_sum(const std::array<ComplexField, 4>& q) {
  return picard_term(q[0], q[1]) + picard_term(q[2], q[3]) - picard_term(q[0], q[3]) -
         picard_term(q[2], q[1]);
}

IdentityResult picard_identity(const std::array<ComplexField, 4>& q, const RiccatiProblem& prob,
                               const CheckOptions& opts, std::optional<std::vector<Point>> samples) {
  const double tol = tolerance_or(opts, 1e-8);
  if (opts.enforce_hypotheses) {
    for (int k = 0; k < 4; ++k) {
      require_riccati_solution(q[k], prob, "Q" + std::to_string(k + 1), opts.solution_tol);
    }
  }
  const std::vector<Point> pts = samples ? *samples : prob.domain.interior_nodes(2);
  if (pts.empty()) throw ResolutionError("picard_identity: no sample points");

  static constexpr std::array<std::pair<int, int>, 4> kPairs{{{1, 2}, {3, 4}, {1, 4}, {3, 2}}};
  static constexpr std::array<double, 4> kSigns{1.0, 1.0, -1.0, -1.0};
  std::array<ComplexField, 4> num;
  std::array<ComplexField, 4> den;
  for (int k = 0; k < 4; ++k) {
    const auto [i, j] = kPairs[k];
    const ComplexField& qi = q[i - 1];
    const ComplexField& qj = q[j - 1];
    den[k] = qi - qj;
    const ComplexField cross = qi.conj() * qj;
    num[k] = d_zbar(den[k]) +
             ComplexField{ScalarField::constant(0.0, qi.domain()), 2.0 * cross.im()};
  }
  double worst = 0.0;
  for (const Point& p : pts) {
    Complex sum = 0.0;
    for (int k = 0; k < 4; ++k) {
      const Complex d = den[k](p);
      if (std::abs(d) <= kDegeneracyThreshold) {
        const auto [i, j] = kPairs[k];
        std::ostringstream os;
        os << "degenerate pair (" << i << "," << j << "): |Q" << i << " - Q" << j
           << "| = " << std::abs(d) << " at (" << p.x << ", " << p.y << ")";
        throw DegeneratePairError(os.str(), i, j);
      }
      sum += kSigns[k] * num[k](p) / d;
    }
    const double a = std::abs(sum);
    if (!std::isfinite(a)) {
      worst = a;
      break;
    }
    worst = std::max(worst, a);
  }
  return make_result("picard", worst, tol);
}

IdentityResult cauchy_riccati(const ComplexField& q0, const ComplexField& q1,
                              const Contour& gamma, const RiccatiProblem& prob,
                              const CheckOptions& opts) {
  const double tol = tolerance_or(opts, 1e-10);
  require_closed(gamma);
  gamma.require_inside(prob.domain);
  if (opts.enforce_hypotheses) {
    require_riccati_solution(q0, prob, "Q0", opts.solution_tol);
    require_riccati_solution(q1, prob, "Q1", opts.solution_tol);
    for (const auto* q : {&q0, &q1}) {
      if (max_modulus(*q) > kBoundednessLimit) {
        throw ParameterError("cauchy_riccati: solution exceeds the boundedness limit");
      }
    }
  }
  const ComplexField diff = q1 - q0;
  const ComplexField g1 = diff * exp(op_A(diff, prob.cfg));
  const ComplexField g2 = diff * exp(op_A(q1 + q0, prob.cfg));
  return contour_study("cauchy-riccati", gamma, tol, [&](const Contour& g) {
    return std::abs(line_integral_dz(g1, g).real()) + std::abs(line_integral_dz(g2, g).imag());
  });
}

IdentityResult cauchy_schrodinger(const ScalarField& f, const ScalarField& u,
                                  const Contour& gamma, const RiccatiProblem& prob,
                                  const CheckOptions& opts) {
  const double tol = tolerance_or(opts, 1e-10);
  require_closed(gamma);
  gamma.require_inside(prob.domain);
  require_nonvanishing(f, "f");
  if (opts.enforce_hypotheses) {
    require_schrodinger_solution(f, prob, "f", opts.solution_tol);
    require_schrodinger_solution(u, prob, "u", opts.solution_tol);
  }
  const ComplexField g = d_z(u / f);
  const ComplexField g2 = g * (f * f);
  return contour_study("cauchy-schrodinger", gamma, tol, [&](const Contour& c) {
    return std::abs(line_integral_dz(g, c).real()) + std::abs(line_integral_dz(g2, c).imag());
  });
}

IdentityResult cauchy_laplace_reductions(const ScalarField& f_or_u, const Contour& gamma,
                                         LaplaceReduction which, const CheckOptions& opts) {
  const double tol = tolerance_or(opts, 1e-10);
  require_closed(gamma);
  gamma.require_inside(f_or_u.domain());
  if (opts.enforce_hypotheses) {
    const double lap = max_abs(f_or_u.laplacian());
    if (!(lap < opts.solution_tol)) {
      std::ostringstream os;
      os << "input is not harmonic: max |Laplacian| = " << lap;
      throw NotASolutionError(os.str(), lap);
    }
  }
  if (which == LaplaceReduction::kAnalyticDerivative) {
    const ComplexField g = d_z(f_or_u);
    return contour_study("laplace-analytic-derivative", gamma, tol,
                         [&](const Contour& c) { return std::abs(line_integral_dz(g, c)); });
  }
  require_nonvanishing(f_or_u, "f");
  const ComplexField g = d_z(1.0 / f_or_u);
  return contour_study("laplace-reciprocal", gamma, tol, [&](const Contour& c) {
    return std::abs(line_integral_dz(g, c).real());
  });
}

// ---------------------------------------------------------------------------

namespace {

Complex offset(Point p, Point c) { return {p.x - c.x, p.y - c.y}; }

}  // namespace

Complex FormalPowerBaseline::partial_sum(Point p, int order) const {
  const Complex w = offset(p, center);
  if (!(std::abs(w) < radius)) throw DomainError("formal power baseline: |z - z0| >= R");
  Complex sum = 0.0, power = 1.0;
  const int top = std::min<int>(order, static_cast<int>(coefficients.size()) - 1);
  for (int n = 0; n <= top; ++n) {
    sum += coefficients[n] * power;
    power *= w;
  }
  return sum;
}

Complex FormalPowerBaseline::partial_sum_dz_re(Point p, int order) const {
  const Complex w = offset(p, center);
  if (!(std::abs(w) < radius)) throw DomainError("formal power baseline: |z - z0| >= R");
  Complex sum = 0.0, power = 1.0;
  const int top = std::min<int>(order, static_cast<int>(coefficients.size()) - 1);
  for (int n = 1; n <= top; ++n) {
    sum += 0.5 * n * coefficients[n] * power;
    power *= w;
  }
  return sum;
}

std::vector<Complex> taylor_coefficients(const ComplexField& w, Point center, double rho,
                                         int nodes, int max_order) {
  if (!(rho > 0.0)) throw ParameterError("taylor_coefficients: radius must be positive");
  if (nodes < 2 * (max_order + 1)) {
    throw ResolutionError("taylor_coefficients: need at least 2 (N + 1) nodes");
  }
  std::vector<Complex> samples(nodes);
  for (int k = 0; k < nodes; ++k) {
    const double t = 2.0 * std::numbers::pi * k / nodes;
    samples[k] = w(Point{center.x + rho * std::cos(t), center.y + rho * std::sin(t)});
  }
  std::vector<Complex> a(max_order + 1);
  for (int n = 0; n <= max_order; ++n) {
    Complex acc = 0.0;
    for (int k = 0; k < nodes; ++k) {
      const double t = 2.0 * std::numbers::pi * k / nodes;
      acc += samples[k] * std::polar(1.0, -n * t);
    }
    a[n] = acc / (static_cast<double>(nodes) * std::pow(rho, n));
  }
  return a;
}

IdentityResult euler_second_baseline(const ComplexField& w, const EulerSecondConfig& cfg,
                                     const CheckOptions& opts) {
  const double tol = tolerance_or(opts, 1e-10);
  if (!(cfg.radius > 0.0)) throw ParameterError("euler_second_baseline: R must be positive");
  if (cfg.max_order < 0) throw ParameterError("euler_second_baseline: N must be >= 0");
  if (cfg.test_points.empty()) throw ParameterError("euler_second_baseline: no test points");
  for (const Point& p : cfg.test_points) {
    if (!(std::abs(offset(p, cfg.center)) < cfg.radius)) {
      throw DomainError("euler_second_baseline: test point outside |z - z0| < R");
    }
  }
  const double rho = cfg.coefficient_radius_fraction * cfg.radius;

  std::vector<Point> probe = cfg.test_points;
  for (int k = 0; k < cfg.coefficient_nodes; ++k) {
    const double t = 2.0 * std::numbers::pi * k / cfg.coefficient_nodes;
    probe.push_back({cfg.center.x + rho * std::cos(t), cfg.center.y + rho * std::sin(t)});
  }
  if (opts.enforce_hypotheses) {
    const SampledExtremum bar = max_modulus(d_zbar(w), probe);
    if (!(bar.value < kAnalyticityThreshold)) {
      std::ostringstream os;
      os << "W is not analytic: |W_zbar| = " << bar.value << " at (" << bar.where.x << ", "
         << bar.where.y << ")";
      throw NotASolutionError(os.str(), bar.value);
    }
  }

  FormalPowerBaseline base{cfg.center, cfg.radius,
                           taylor_coefficients(w, cfg.center, rho, cfg.coefficient_nodes,
                                               cfg.max_order)};

  const ComplexField wz_re = d_z(w.re());
  std::vector<Complex> q_true;
  q_true.reserve(cfg.test_points.size());
  for (const Point& p : cfg.test_points) {
    const double re = w.re()(p);
    if (!(std::abs(re) > kNonvanishingThreshold)) {
      throw ZeroSetError("euler_second_baseline: Re W vanishes on the test region", p.x, p.y,
                         re);
    }
    q_true.push_back(wz_re(p) / re);
  }

  RefinementTable table;
  for (int n = 0; n <= cfg.max_order; ++n) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cfg.test_points.size() && std::isfinite(worst); ++k) {
      const Point& p = cfg.test_points[k];
      const double re = base.partial_sum(p, n).real();
      if (!(std::abs(re) > kNonvanishingThreshold)) {
        if (n == cfg.max_order) {
          throw ZeroSetError("euler_second_baseline: Re of the partial sum vanishes on the test region",
                             p.x, p.y, re);
        }
        worst = std::numeric_limits<double>::infinity();
        break;
      }
      worst = std::max(worst, std::abs(base.partial_sum_dz_re(p, n) / re - q_true[k]));
    }
    table.emplace_back(static_cast<double>(n), worst);
  }
  const double r = table.back().second;
  return make_result("euler2-baseline", r, tol, std::move(table));
}

std::vector<Point> annulus_points(Point center, double r_inner, double r_outer, int rings,
                                  int per_ring) {
  if (!(r_inner >= 0.0 && r_outer >= r_inner) || rings < 1 || per_ring < 1) {
    throw ParameterError("annulus_points: invalid annulus");
  }
  std::vector<Point> out;
  for (int i = 0; i < rings; ++i) {
    const double r = rings == 1 ? r_outer : r_inner + (r_outer - r_inner) * i / (rings - 1);
    for (int k = 0; k < per_ring; ++k) {
      const double t = 2.0 * std::numbers::pi * k / per_ring;
      out.push_back({center.x + r * std::cos(t), center.y + r * std::sin(t)});
    }
  }
  return out;
}

std::vector<Point> rectangle_points(double x_min, double x_max, double y_min, double y_max,
                                    int n) {
  if (n < 2 || !(x_max > x_min) || !(y_max > y_min)) {
    throw ParameterError("rectangle_points: invalid rectangle");
  }
  std::vector<Point> out;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      out.push_back({x_min + (x_max - x_min) * i / (n - 1), y_min + (y_max - y_min) * j / (n - 1)});
    }
  }
  return out;
}

RefinementTable grid_refinement(const std::function<double(const DomainSpec&)>& residual_on,
                                const DomainSpec& coarse, int levels) {
  if (levels < 1) throw ParameterError("grid_refinement: levels must be >= 1");
  RefinementTable table;
  int nx = coarse.nx(), ny = coarse.ny();
  for (int k = 0; k < levels; ++k) {
    const DomainSpec grid = coarse.with_resolution(nx, ny);
    table.emplace_back(1.0 / grid.hx(), residual_on(grid));
    nx = 2 * (nx - 1) + 1;
    ny = 2 * (ny - 1) + 1;
  }
  return table;
}

std::vector<double> empirical_orders(const RefinementTable& table) {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < table.size(); ++k) {
    const double ratio = table[k].second / table[k + 1].second;
    const double steps = std::log2(table[k + 1].first / table[k].first);
    out.push_back(std::log2(ratio) / steps);
  }
  return out;
}

}  // namespace criccati
