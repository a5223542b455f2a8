#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "criccati/domain.hpp"
#include "criccati/oracle.hpp"
#include "criccati/theorems.hpp"

namespace criccati::cli {

/// Field given either as an expression or as `csv:PATH` (complex: `csv:PREFIX`).
/// Complex expressions are written `RE ; IM`.
struct FieldSource {
  std::string text;
  bool csv = false;
};

struct RunConfig {
  std::string case_name;
  std::optional<DomainSpec> domain;
  std::optional<Point> base;
  double constant_c = 0.0;
  double compat_tol = 1e-8;
  /// Raw oracle descriptions, e.g. `exp_family nu=1 theta=0`.
  std::vector<std::string> oracles;
  std::optional<FieldSource> u, f, nu, phi, w;
  std::optional<std::string> contour;
  std::optional<double> tolerance;
  int refine = 0;
  Point center{0.0, 0.0};
  double radius = 1.0;
  int order = 10;
  /// r_inner, r_outer.
  std::optional<std::pair<double, double>> test_annulus;
  /// x_min, x_max, y_min, y_max.
  std::optional<std::array<double, 4>> test_region;
  std::string reduction = "analytic";
  /// Directory that relative CSV paths resolve against.
  std::filesystem::path base_dir;
  /// Key/value pairs in file order, for the report.
  std::vector<std::pair<std::string, std::string>> entries;
};

/// Line-oriented `key = value` text; `#` starts a comment. Throws ParseError
/// (with line number) for malformed lines or expressions and ConfigError
/// naming the field for unknown, repeated, missing or invalid keys.
RunConfig parse_config(std::string_view text, std::filesystem::path base_dir = {});

/// `exp_family nu= theta=`, `separable nu1= nu2= [branch=exp|cosh]` or
/// `harmonic [kind=monomial|translate] n= [sx= sy=]`. Throws ConfigError.
OracleSolution make_oracle(std::string_view text, const DomainSpec& domain);

/// Reads and parses a config file. Throws IoError when it cannot be read.
RunConfig load_config(const std::filesystem::path& path);

struct CaseResult {
  std::string case_name;
  IdentityResult result;
  double elapsed_ms = 0.0;
};

struct Report {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<CaseResult> results;
  bool pass = false;
};

struct RunOptions {
  /// Residual fields are written here as grid CSV when set.
  std::optional<std::filesystem::path> dump_dir;
  /// Overrides the config's `refine`.
  std::optional<int> refine;
};

/// Checker failures are captured per identity; I/O errors propagate.
Report run(const RunConfig& cfg, const RunOptions& opts = {});

/// The built-in suite used by `case = all`.
std::vector<RunConfig> default_suite();

nlohmann::json to_json(const Report& report);

}  // namespace criccati::cli
