#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "criccati/cli.hpp"
#include "criccati/contour.hpp"
#include "criccati/errors.hpp"
#include "criccati/expression.hpp"

namespace criccati::cli {

namespace {

const std::set<std::string, std::less<>> kCases{
    "riccati-residual", "darboux",        "euler1",
    "euler2-baseline",  "picard",         "cauchy-riccati",
    "cauchy-schrodinger", "laplace-reductions", "all"};

const std::set<std::string, std::less<>> kKeys{
    "case",      "domain",  "base",   "c",       "compat_tol",   "oracle",
    "u",         "f",       "nu",     "phi",     "W",            "contour",
    "tolerance", "refine",  "center", "radius",  "order",        "test_annulus",
    "test_region", "reduction"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

double to_double(std::string_view s, const std::string& field) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError(field + ": expected a number, got '" + std::string(s) + "'", field);
  }
  return v;
}

int to_int(std::string_view s, const std::string& field) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigError(field + ": expected an integer, got '" + std::string(s) + "'", field);
  }
  return v;
}

std::vector<double> numbers(std::string_view s, const std::string& field, std::size_t min_count,
                            std::size_t max_count) {
  const auto ws = words(s);
  if (ws.size() < min_count || ws.size() > max_count) {
    std::ostringstream os;
    os << field << ": expected " << min_count;
    if (max_count != min_count) os << " to " << max_count;
    os << " numbers";
    throw ConfigError(os.str(), field);
  }
  std::vector<double> out;
  for (const auto& w : ws) out.push_back(to_double(w, field));
  return out;
}

// Rethrows expression syntax errors with the config line attached.
void check_expression(std::string_view text, int line) {
  try {
    parse_expression(text);
  } catch (const ParseError& e) {
    throw ParseError("line " + std::to_string(line) + ": " + e.what(), line);
  }
}

FieldSource field_source(std::string_view value, bool complex, int line) {
  if (value.starts_with("csv:")) {
    return {std::string(trim(value.substr(4))), true};
  }
  if (complex) {
    const auto semi = value.find(';');
    if (semi == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line) + ": complex field needs 'RE ; IM'", line);
    }
    check_expression(trim(value.substr(0, semi)), line);
    check_expression(trim(value.substr(semi + 1)), line);
  } else {
    check_expression(value, line);
  }
  return {std::string(value), false};
}

}  // namespace

RunConfig parse_config(std::string_view text, std::filesystem::path base_dir) {
  RunConfig cfg;
  cfg.base_dir = std::move(base_dir);
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
    }
    if (!kKeys.contains(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'", key);
    }
    if (key != "oracle" && !seen.insert(key).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": repeated key '" + key + "'", key);
    }
    cfg.entries.emplace_back(key, std::string(value));

    if (key == "case") {
      if (!kCases.contains(value)) {
        throw ConfigError("unknown case '" + std::string(value) + "'", key);
      }
      cfg.case_name = value;
    } else if (key == "domain") {
      const auto v = numbers(value, key, 4, 6);
      const int nx = v.size() > 4 ? to_int(words(value)[4], key) : 21;
      const int ny = v.size() > 5 ? to_int(words(value)[5], key) : nx;
      try {
        cfg.domain = DomainSpec(v[0], v[1], v[2], v[3],
                                Point{0.5 * (v[0] + v[1]), 0.5 * (v[2] + v[3])}, nx, ny);
      } catch (const Error& e) {
        throw ConfigError(std::string("domain: ") + e.what(), key);
      }
    } else if (key == "base") {
      const auto v = numbers(value, key, 2, 2);
      cfg.base = Point{v[0], v[1]};
    } else if (key == "c") {
      cfg.constant_c = to_double(value, key);
    } else if (key == "compat_tol") {
      cfg.compat_tol = to_double(value, key);
      if (!(cfg.compat_tol > 0.0)) throw ConfigError("compat_tol must be positive", key);
    } else if (key == "oracle") {
      cfg.oracles.emplace_back(value);
    } else if (key == "u") {
      cfg.u = field_source(value, false, line_no);
    } else if (key == "f") {
      cfg.f = field_source(value, false, line_no);
    } else if (key == "nu") {
      cfg.nu = field_source(value, false, line_no);
    } else if (key == "phi") {
      cfg.phi = field_source(value, false, line_no);
    } else if (key == "W") {
      cfg.w = field_source(value, true, line_no);
    } else if (key == "contour") {
      try {
        Contour::parse(value);
      } catch (const Error& e) {
        throw ConfigError(std::string("contour: ") + e.what(), key);
      }
      cfg.contour = std::string(value);
    } else if (key == "tolerance") {
      cfg.tolerance = to_double(value, key);
      if (!(*cfg.tolerance > 0.0)) throw ConfigError("tolerance must be positive", key);
    } else if (key == "refine") {
      cfg.refine = to_int(value, key);
      if (cfg.refine < 0 || cfg.refine > 6) throw ConfigError("refine must be in [0, 6]", key);
    } else if (key == "center") {
      const auto v = numbers(value, key, 2, 2);
      cfg.center = {v[0], v[1]};
    } else if (key == "radius") {
      cfg.radius = to_double(value, key);
      if (!(cfg.radius > 0.0)) throw ConfigError("radius must be positive", key);
    } else if (key == "order") {
      cfg.order = to_int(value, key);
      if (cfg.order < 0 || cfg.order > 40) throw ConfigError("order must be in [0, 40]", key);
    } else if (key == "test_annulus") {
      const auto v = numbers(value, key, 2, 2);
      if (!(v[0] >= 0.0 && v[1] > v[0])) throw ConfigError("test_annulus: need 0 <= r1 < r2", key);
      cfg.test_annulus = std::pair{v[0], v[1]};
    } else if (key == "test_region") {
      const auto v = numbers(value, key, 4, 4);
      if (!(v[1] > v[0] && v[3] > v[2])) throw ConfigError("test_region: empty rectangle", key);
      cfg.test_region = std::array<double, 4>{v[0], v[1], v[2], v[3]};
    } else if (key == "reduction") {
      if (value != "analytic" && value != "reciprocal") {
        throw ConfigError("reduction must be 'analytic' or 'reciprocal'", key);
      }
      cfg.reduction = value;
    }
  }

  if (cfg.case_name.empty()) throw ConfigError("missing required key 'case'", "case");
  if (cfg.case_name != "all" && !cfg.domain) {
    throw ConfigError("missing required key 'domain'", "domain");
  }
  if (cfg.domain && cfg.base) {
    if (!cfg.domain->contains(*cfg.base)) throw ConfigError("base outside domain", "base");
    cfg.domain = cfg.domain->with_base(*cfg.base);
  }
  if (cfg.domain) {
    for (const auto& text : cfg.oracles) make_oracle(text, *cfg.domain);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

}  // namespace criccati::cli
