#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <sstream>

#include "criccati/cli.hpp"
#include "criccati/differential.hpp"
#include "criccati/errors.hpp"
#include "criccati/expression.hpp"
#include "criccati/grid_io.hpp"
#include "criccati/oracle.hpp"
#include "criccati/riccati.hpp"

namespace criccati::cli {

namespace {

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

double param(const std::vector<std::pair<std::string, std::string>>& kv, const std::string& key,
             std::optional<double> fallback = std::nullopt) {
  for (const auto& [k, v] : kv) {
    if (k != key) continue;
    try {
      std::size_t used = 0;
      const double d = std::stod(v, &used);
      if (used == v.size()) return d;
    } catch (const std::exception&) {
    }
    throw ConfigError("oracle: bad value for " + key + ": '" + v + "'", "oracle");
  }
  if (fallback) return *fallback;
  throw ConfigError("oracle: missing parameter " + key, "oracle");
}

std::string word_param(const std::vector<std::pair<std::string, std::string>>& kv,
                       const std::string& key, const std::string& fallback) {
  for (const auto& [k, v] : kv) {
    if (k == key) return v;
  }
  return fallback;
}

}  // namespace

OracleSolution make_oracle(std::string_view text, const DomainSpec& domain) {
  const auto ws = words(text);
  if (ws.empty()) throw ConfigError("oracle: empty description", "oracle");
  std::vector<std::pair<std::string, std::string>> kv;
  for (std::size_t k = 1; k < ws.size(); ++k) {
    const auto eq = ws[k].find('=');
    if (eq == std::string::npos) {
      throw ConfigError("oracle: expected key=value, got '" + ws[k] + "'", "oracle");
    }
    kv.emplace_back(ws[k].substr(0, eq), ws[k].substr(eq + 1));
  }
  auto allow = [&](std::initializer_list<std::string_view> keys) {
    for (const auto& [k, v] : kv) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
        throw ConfigError("oracle: unknown parameter '" + k + "' for " + ws[0], "oracle");
      }
    }
  };
  try {
    if (ws[0] == "exp_family") {
      allow({"nu", "theta"});
      return exp_family(param(kv, "nu"), param(kv, "theta", 0.0), domain);
    }
    if (ws[0] == "separable") {
      allow({"nu1", "nu2", "branch"});
      const std::string branch = word_param(kv, "branch", "exp");
      if (branch != "exp" && branch != "cosh") {
        throw ConfigError("oracle: branch must be exp or cosh", "oracle");
      }
      return separable_family(param(kv, "nu1"), param(kv, "nu2"), domain,
                              branch == "cosh" ? PositiveBranch::kCosh : PositiveBranch::kExp);
    }
    if (ws[0] == "harmonic") {
      allow({"kind", "n", "sx", "sy"});
      const std::string kind = word_param(kv, "kind", "translate");
      if (kind != "monomial" && kind != "translate") {
        throw ConfigError("oracle: kind must be monomial or translate", "oracle");
      }
      const double n = param(kv, "n");
      if (n != std::floor(n) || n < 0 || n > 64) {
        throw ConfigError("oracle: n must be an integer in [0, 64]", "oracle");
      }
      return harmonic_family(kind == "monomial" ? HarmonicKind::kMonomial
                                                : HarmonicKind::kTranslate,
                             static_cast<int>(n), Point{param(kv, "sx", 0.0), param(kv, "sy", 0.0)},
                             domain);
    }
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("oracle: ") + e.what(), "oracle");
  }
  throw ConfigError("oracle: unknown family '" + ws[0] + "'", "oracle");
}

namespace {

using Clock = std::chrono::steady_clock;

struct Inputs {
  const RunConfig& cfg;
  DomainSpec domain;
  AntiderivativeConfig acfg;
  int refine;
  const RunOptions& opts;
  std::vector<OracleSolution> oracles;

  ScalarField scalar(const FieldSource& src) const {
    if (!src.csv) return ScalarField(parse_expression(src.text), domain);
    ScalarField f = read_grid_csv(cfg.base_dir / src.text, domain.base());
    if (!f.domain().same_rectangle(domain)) {
      throw ParameterError("csv field " + src.text + " does not cover the configured domain");
    }
    return f;
  }

  ComplexField complex(const FieldSource& src) const {
    if (src.csv) {
      ComplexField w = read_complex_grid_csv(cfg.base_dir / src.text, domain.base());
      if (!w.domain().same_rectangle(domain)) {
        throw ParameterError("csv field " + src.text + " does not cover the configured domain");
      }
      return w;
    }
    const auto semi = src.text.find(';');
    return {ScalarField(parse_expression(src.text.substr(0, semi)), domain),
            ScalarField(parse_expression(src.text.substr(semi + 1)), domain)};
  }

  const FieldSource& need(const std::optional<FieldSource>& src, const char* key) const {
    if (!src) throw ConfigError(std::string("case ") + cfg.case_name + " needs '" + key + "'", key);
    return *src;
  }

  const OracleSolution& oracle(std::size_t k, const char* role) const {
    if (k >= oracles.size()) {
      std::ostringstream os;
      os << "case " << cfg.case_name << " needs an oracle line for " << role;
      throw ConfigError(os.str(), "oracle");
    }
    return oracles[k];
  }

  ScalarField nu() const {
    if (cfg.nu) return scalar(*cfg.nu);
    if (!oracles.empty()) return oracles.front().nu.with_domain(domain);
    throw ConfigError("case " + cfg.case_name + " needs 'nu'", "nu");
  }

  RiccatiProblem problem() const { return RiccatiProblem(nu(), domain, acfg); }
  RiccatiProblem problem(const ScalarField& nu) const { return RiccatiProblem(nu, domain, acfg); }

  CheckOptions check() const {
    CheckOptions o;
    o.tolerance = cfg.tolerance;
    return o;
  }

  double tol(double fallback) const { return cfg.tolerance.value_or(fallback); }

  // Probe points for a residual field: all nodes for expressions, nodes at
  // least two cells from the boundary for grid data.
  std::vector<Point> probes(bool grid) const {
    return grid ? domain.interior_nodes(2) : domain.nodes();
  }

  void dump(const std::string& name, const ComplexField& field) const {
    if (opts.dump_dir) write_complex_grid_csv(*opts.dump_dir / name, sample(field));
  }
  void dump(const std::string& name, const ScalarField& field) const {
    if (opts.dump_dir) {
      write_grid_csv(*opts.dump_dir / (name + ".csv"), ScalarField::sample(field, domain));
    }
  }
  ComplexField sample(const ComplexField& f) const { return ComplexField::sample(f, domain); }

  // FD residuals of `residual_on(grid)` at the coarse interior nodes, with the
  // configured domain as the coarsest grid.
  RefinementTable fd_table(
      const std::function<double(const DomainSpec&, std::span<const Point>)>& residual_on) const {
    if (refine < 2) return {};
    const auto pts = domain.interior_nodes(2);
    return grid_refinement([&](const DomainSpec& g) { return residual_on(g, pts); }, domain,
                           refine);
  }
};

class Collector {
 public:
  Collector(std::string case_name, std::vector<CaseResult>& out)
      : case_(std::move(case_name)), out_(out) {}

  void add(const std::string& name, double default_tol, const Inputs* in,
           const std::function<IdentityResult()>& fn) {
    const auto t0 = Clock::now();
    IdentityResult r;
    try {
      r = fn();
    } catch (const IoError&) {
      throw;
    } catch (const Error& e) {
      r = make_result(name, std::numeric_limits<double>::quiet_NaN(),
                      in ? in->tol(default_tol) : default_tol);
      r.reason = e.what();
    }
    r.name = name;
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    out_.push_back({case_, std::move(r), ms});
  }

 private:
  std::string case_;
  std::vector<CaseResult>& out_;
};

double max_over(const ComplexField& f, std::span<const Point> pts) {
  return max_modulus(f, pts).value;
}
double max_over(const ScalarField& f, std::span<const Point> pts) { return max_abs(f, pts).value; }

// ---------------------------------------------------------------------------

void case_riccati(const Inputs& in, Collector& out) {
  const double tol = 1e-10;
  using Source = std::function<ScalarField()>;
  auto one = [&](const std::string& tag, const Source& get_u, const Source& get_nu,
                 bool refine, int index) {
    out.add("riccati " + tag, tol, &in, [&] {
      const ScalarField u = get_u(), nu = get_nu();
      const ComplexField res = riccati_residual(log_derivative(u), in.problem(nu));
      in.dump("riccati-residual_" + std::to_string(index), res);
      RefinementTable table;
      if (refine) {
        table = in.fd_table([&](const DomainSpec& g, std::span<const Point> pts) {
          const RiccatiProblem gp(nu, g, in.acfg);
          return max_over(riccati_residual(log_derivative(ScalarField::sample(u, g)), gp), pts);
        });
      }
      return make_result("", max_over(res, in.probes(u.is_grid())), in.tol(tol), table);
    });
    out.add("schrodinger " + tag, tol, &in, [&] {
      const ScalarField u = get_u(), nu = get_nu();
      const ScalarField res = schrodinger_residual(u, in.problem(nu));
      RefinementTable table;
      if (refine) {
        table = in.fd_table([&](const DomainSpec& g, std::span<const Point> pts) {
          const RiccatiProblem gp(nu, g, in.acfg);
          return max_over(schrodinger_residual(ScalarField::sample(u, g), gp), pts);
        });
      }
      return make_result("", max_over(res, in.probes(u.is_grid())), in.tol(tol), table);
    });
    if (in.cfg.phi) {
      out.add("factorization " + tag, tol, &in, [&] {
        const ScalarField u = get_u(), nu = get_nu();
        const ScalarField phi = in.scalar(*in.cfg.phi);
        const FactorizationTriple t = factorization_apply(log_derivative(u), phi, in.problem(nu));
        const auto pts = in.probes(u.is_grid() || phi.is_grid());
        const double r = std::max(max_over(t.lhs - t.rhs1, pts), max_over(t.lhs - t.rhs2, pts));
        return make_result("", r, in.tol(tol));
      });
    }
  };
  int index = 0;
  for (const auto& o : in.oracles) {
    one(o.label(), [&] { return o.u; }, [&] { return o.nu; }, true, index++);
  }
  if (in.cfg.u) {
    one("u", [&] { return in.scalar(*in.cfg.u); }, [&] { return in.nu(); }, false, index);
  }
}

std::pair<ScalarField, ScalarField> f_and_u(const Inputs& in) {
  if (in.cfg.f || in.cfg.u) {
    return {in.scalar(in.need(in.cfg.f, "f")), in.scalar(in.need(in.cfg.u, "u"))};
  }
  return {in.oracle(0, "f").u, in.oracle(1, "u").u};
}

void case_darboux(const Inputs& in, Collector& out) {
  const double tol = 1e-8;
  out.add("darboux-transform", tol, &in, [&] {
    const auto [f, u] = f_and_u(in);
    const RiccatiProblem prob = in.problem();
    require_nonvanishing(f, "f");
    require_schrodinger_solution(f, prob, "f");
    require_schrodinger_solution(u, prob, "u");
    const ScalarField v = darboux_v_from_u(u, f, prob);
    const ScalarField eta = darboux_potential_eta(f, prob);
    const ScalarField res = eta * v - v.laplacian();
    in.dump("darboux_0", res);
    return make_result("", max_over(res, in.probes(res.is_grid())), in.tol(tol));
  });
  out.add("darboux-roundtrip", tol, &in, [&] {
    const auto [f, u] = f_and_u(in);
    const RiccatiProblem prob = in.problem();
    require_nonvanishing(f, "f");
    require_schrodinger_solution(f, prob, "f");
    require_schrodinger_solution(u, prob, "u");
    const ScalarField back = darboux_u_from_v(darboux_v_from_u(u, f, prob), f, prob);
    const Point b = in.domain.base();
    const double alpha = (back(b) - u(b)) / f(b);
    const ScalarField err = back - alpha * f - u;
    return make_result("", max_over(err, in.probes(err.is_grid())), in.tol(tol));
  });
}

void case_euler1(const Inputs& in, Collector& out) {
  const double tol = 1e-8;
  auto build = [&] {
    const OracleSolution& base = in.oracle(0, "Q0");
    const OracleSolution& target = in.oracle(1, "Q");
    const RiccatiProblem prob = in.problem();
    return std::tuple{base.u, target.q, euler_first_W_from_Q(target.q, base.q, prob)};
  };
  out.add("euler1-vekua", tol, &in, [&] {
    const auto [f, q, w] = build();
    const ComplexField res = vekua_residual(w, f);
    in.dump("euler1_0", res);
    return make_result("", max_over(res, in.probes(res.is_grid())), in.tol(tol));
  });
  out.add("euler1-roundtrip", tol, &in, [&] {
    const auto [f, q, w] = build();
    const ComplexField err = euler_first_Q_from_W(w) - q;
    return make_result("", max_over(err, in.probes(err.is_grid())), in.tol(tol));
  });
}

void case_euler2(const Inputs& in, Collector& out) {
  out.add("euler2-baseline", 1e-10, &in, [&] {
    const ComplexField w = in.complex(in.need(in.cfg.w, "W"));
    EulerSecondConfig ec;
    ec.center = in.cfg.center;
    ec.radius = in.cfg.radius;
    ec.max_order = in.cfg.order;
    if (in.cfg.test_annulus) {
      ec.test_points = annulus_points(ec.center, in.cfg.test_annulus->first,
                                      in.cfg.test_annulus->second, 4, 32);
    } else if (in.cfg.test_region) {
      const auto& r = *in.cfg.test_region;
      ec.test_points = rectangle_points(r[0], r[1], r[2], r[3], 9);
    } else {
      throw ConfigError("case euler2-baseline needs test_annulus or test_region", "test_region");
    }
    return euler_second_baseline(w, ec, in.check());
  });
}

void case_picard(const Inputs& in, Collector& out) {
  out.add("picard", 1e-8, &in, [&] {
    std::array<ComplexField, 4> q;
    for (int k = 0; k < 4; ++k) q[k] = in.oracle(k, "Q1..Q4").q;
    const RiccatiProblem prob = in.problem();
    in.dump("picard_0", picard_sum(q));
    IdentityResult r = picard_identity(q, prob, in.check());
    r.refinement = in.fd_table([&](const DomainSpec& g, std::span<const Point> pts) {
      std::array<ComplexField, 4> qg;
      for (int k = 0; k < 4; ++k) qg[k] = ComplexField::sample(q[k], g);
      CheckOptions o;
      o.enforce_hypotheses = false;
      return picard_identity(qg, RiccatiProblem(prob.nu, g, in.acfg), o,
                             std::vector<Point>(pts.begin(), pts.end()))
          .residual;
    });
    return r;
  });
}

Contour need_contour(const Inputs& in) {
  if (!in.cfg.contour) {
    throw ConfigError("case " + in.cfg.case_name + " needs 'contour'", "contour");
  }
  return Contour::parse(*in.cfg.contour);
}

void case_cauchy_riccati(const Inputs& in, Collector& out) {
  out.add("cauchy-riccati", 1e-10, &in, [&] {
    const Contour gamma = need_contour(in);
    return cauchy_riccati(in.oracle(0, "Q0").q, in.oracle(1, "Q1").q, gamma, in.problem(),
                          in.check());
  });
}

void case_cauchy_schrodinger(const Inputs& in, Collector& out) {
  out.add("cauchy-schrodinger", 1e-10, &in, [&] {
    const Contour gamma = need_contour(in);
    const auto [f, u] = f_and_u(in);
    return cauchy_schrodinger(f, u, gamma, in.problem(), in.check());
  });
}

void case_laplace(const Inputs& in, Collector& out) {
  const bool reciprocal = in.cfg.reduction == "reciprocal";
  out.add(reciprocal ? "laplace-reciprocal" : "laplace-analytic-derivative", 1e-10, &in, [&] {
    const Contour gamma = need_contour(in);
    const FieldSource& src = in.cfg.f ? *in.cfg.f : in.need(in.cfg.u, "u");
    return cauchy_laplace_reductions(
        in.scalar(src), gamma,
        reciprocal ? LaplaceReduction::kReciprocal : LaplaceReduction::kAnalyticDerivative,
        in.check());
  });
}

std::vector<CaseResult> run_single(const RunConfig& cfg, const RunOptions& opts) {
  std::vector<CaseResult> results;
  Collector out(cfg.case_name, results);
  Inputs in{cfg,
            *cfg.domain,
            AntiderivativeConfig{cfg.domain->base(), cfg.constant_c, cfg.compat_tol},
            opts.refine.value_or(cfg.refine),
            opts,
            {}};
  for (const auto& text : cfg.oracles) in.oracles.push_back(make_oracle(text, in.domain));

  const std::string& c = cfg.case_name;
  if (c == "riccati-residual") case_riccati(in, out);
  else if (c == "darboux") case_darboux(in, out);
  else if (c == "euler1") case_euler1(in, out);
  else if (c == "euler2-baseline") case_euler2(in, out);
  else if (c == "picard") case_picard(in, out);
  else if (c == "cauchy-riccati") case_cauchy_riccati(in, out);
  else if (c == "cauchy-schrodinger") case_cauchy_schrodinger(in, out);
  else if (c == "laplace-reductions") case_laplace(in, out);
  return results;
}

}  // namespace

Report run(const RunConfig& cfg, const RunOptions& opts) {
  Report report;
  report.config = cfg.entries;
  if (cfg.case_name == "all") {
    std::vector<std::future<std::vector<CaseResult>>> jobs;
    for (const RunConfig& sub : default_suite()) {
      jobs.push_back(std::async(std::launch::async, run_single, sub, opts));
    }
    for (auto& job : jobs) {
      for (auto& r : job.get()) report.results.push_back(std::move(r));
    }
  } else {
    report.results = run_single(cfg, opts);
  }
  std::stable_sort(report.results.begin(), report.results.end(),
                   [](const CaseResult& a, const CaseResult& b) {
                     return a.case_name < b.case_name;
                   });
  report.pass = !report.results.empty() &&
                std::all_of(report.results.begin(), report.results.end(),
                            [](const CaseResult& r) { return r.result.pass; });
  return report;
}

std::vector<RunConfig> default_suite() {
  static constexpr const char* kSuite[] = {
      R"(case = riccati-residual
domain = -1 1 -1 1 21
oracle = exp_family nu=1 theta=0.927295218001612
oracle = separable nu1=0 nu2=-1
oracle = harmonic kind=translate n=2 sx=-3 sy=0
phi = sin(x)*cosh(y))",
      R"(case = darboux
domain = -1 1 -1 1 21
f = exp(x)
u = exp(0.6*x + 0.8*y)
nu = 1)",
      R"(case = euler1
domain = -1 1 -1 1 21
oracle = exp_family nu=1 theta=0
oracle = exp_family nu=1 theta=0.927295218001612)",
      R"(case = euler2-baseline
domain = -1 1 -1 1 21
W = exp(x)*cos(y) ; exp(x)*sin(y)
center = 0 0
radius = 4
order = 12
test_annulus = 0.1 0.4)",
      R"(case = picard
domain = -1 1 -1 1 21
oracle = separable nu1=1 nu2=0 branch=cosh
oracle = separable nu1=2 nu2=-1
oracle = separable nu1=0 nu2=1 branch=cosh
oracle = separable nu1=1.5 nu2=-0.5)",
      R"(case = cauchy-riccati
domain = -1.5 1.5 -1.5 1.5 31
oracle = exp_family nu=1 theta=0
oracle = exp_family nu=1 theta=0.927295218001612
contour = circle 0 0 1 256)",
      R"(case = cauchy-schrodinger
domain = -1.5 1.5 -1.5 1.5 31
f = exp(x)
u = exp(0.6*x + 0.8*y)
nu = 1
contour = circle 0 0 1 256)",
      R"(case = laplace-reductions
domain = -1.5 1.5 -1.5 1.5 31
u = x^2 - y^2
contour = circle 0 0 1 256)",
      R"(case = laplace-reductions
domain = -1.5 1.5 -1.5 1.5 31
f = 4 + x
reduction = reciprocal
contour = circle 0 0 1 256)",
  };
  std::vector<RunConfig> out;
  for (const char* text : kSuite) out.push_back(parse_config(text));
  return out;
}

namespace {

// JSON has no NaN or infinity.
nlohmann::json number(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const Report& report) {
  using nlohmann::json;
  json config = json::object();
  for (const auto& [k, v] : report.config) {
    if (k == "oracle") {
      config[k].push_back(v);
    } else {
      config[k] = v;
    }
  }
  json results = json::array();
  for (const CaseResult& c : report.results) {
    json table = json::array();
    for (const auto& [res, val] : c.result.refinement) table.push_back({res, number(val)});
    json entry{{"case", c.case_name},
               {"name", c.result.name},
               {"residual", number(c.result.residual)},
               {"tolerance", c.result.tolerance},
               {"pass", c.result.pass},
               {"refinement", table},
               {"elapsed_ms", c.elapsed_ms}};
    if (!c.result.reason.empty()) entry["reason"] = c.result.reason;
    results.push_back(std::move(entry));
  }
  return json{{"config", config}, {"results", results}, {"pass", report.pass}};
}

}  // namespace criccati::cli
