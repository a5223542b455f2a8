#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "criccati/cli.hpp"
#include "criccati/errors.hpp"
#include "criccati/grid_io.hpp"

using namespace criccati;
using namespace criccati::cli;

namespace {

const char* kPicard = R"(# four separable solutions with nu = 1
case = picard
domain = -1 1 -1 1 21
oracle = separable nu1=1 nu2=0 branch=cosh
oracle = separable nu1=2 nu2=-1
oracle = separable nu1=0 nu2=1 branch=cosh
oracle = separable nu1=1.5 nu2=-0.5
)";

nlohmann::json masked(const Report& r) {
  nlohmann::json j = to_json(r);
  for (auto& e : j["results"]) e.erase("elapsed_ms");
  return j;
}

}  // namespace

TEST(ParseConfig, PicardWithFourOracles) {
  const RunConfig cfg = parse_config(kPicard);
  EXPECT_EQ(cfg.case_name, "picard");
  EXPECT_EQ(cfg.oracles.size(), 4u);
  ASSERT_TRUE(cfg.domain.has_value());
  EXPECT_EQ(cfg.domain->nx(), 21);
  EXPECT_EQ(cfg.domain->base().x, 0.0);
}

TEST(ParseConfig, MissingDomainNamesTheField) {
  try {
    parse_config("case = picard\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "domain");
  }
}

TEST(ParseConfig, MalformedExpressionReportsLine) {
  try {
    parse_config("case = darboux\ndomain = -1 1 -1 1\nu = exp(\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(ParseConfig, RejectsUnknownRepeatedAndInvalidKeys) {
  EXPECT_THROW(parse_config("case = all\nspeed = 3\n"), ConfigError);
  EXPECT_THROW(parse_config("case = all\ncase = picard\n"), ConfigError);
  EXPECT_THROW(parse_config("case = nope\n"), ConfigError);
  EXPECT_THROW(parse_config("case = all\ntolerance = -1\n"), ConfigError);
  EXPECT_THROW(parse_config("case = all\njust words\n"), ParseError);
  EXPECT_THROW(parse_config("case = darboux\ndomain = -1 1 -1\n"), ConfigError);
  EXPECT_THROW(parse_config("case = darboux\ndomain = 1 -1 -1 1\n"), ConfigError);
  EXPECT_THROW(parse_config("domain = -1 1 -1 1\n"), ConfigError);
  EXPECT_THROW(parse_config("case = picard\ndomain = -1 1 -1 1\noracle = bessel n=1\n"),
               ConfigError);
  EXPECT_THROW(parse_config("case = picard\ndomain = -1 1 -1 1\noracle = exp_family nu=1 q=2\n"),
               ConfigError);
  // A zero set inside the domain makes the oracle unusable.
  EXPECT_THROW(parse_config("case = picard\ndomain = -1 1 -1 1\noracle = harmonic n=1 sx=0\n"),
               ConfigError);
  EXPECT_THROW(parse_config("case = cauchy-riccati\ndomain = -1 1 -1 1\ncontour = circle 0 0\n"),
               ConfigError);
}

TEST(ParseConfig, CommentsBlankLinesAndBase) {
  const RunConfig cfg = parse_config("\n# comment\ncase = darboux  # trailing\n"
                                     "domain = 0 2 0 1 11 6\nbase = 0.5 0.5\n");
  EXPECT_EQ(cfg.case_name, "darboux");
  EXPECT_EQ(cfg.domain->ny(), 6);
  EXPECT_EQ(cfg.domain->base().x, 0.5);
  EXPECT_THROW(parse_config("case = darboux\ndomain = 0 2 0 1\nbase = 5 5\n"), ConfigError);
}

TEST(Run, RiccatiResidualOracle) {
  const Report r = run(parse_config("case = riccati-residual\ndomain = -1 1 -1 1\n"
                                    "oracle = exp_family nu=1 theta=0.9273\n"));
  ASSERT_EQ(r.results.size(), 2u);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.results[0].result.residual, 1e-10);
}

TEST(Run, RiccatiResidualRefinementTable) {
  RunOptions opts;
  opts.refine = 3;
  const Report r = run(parse_config("case = riccati-residual\ndomain = -1 1 -1 1 11\n"
                                    "oracle = separable nu1=2 nu2=-1 branch=cosh\n"),
                       opts);
  ASSERT_EQ(r.results[0].result.refinement.size(), 3u);
  const auto& t = r.results[0].result.refinement;
  EXPECT_NEAR(t[0].second / t[1].second, 4.0, 1.0);
}

TEST(Run, OpenContourFailsWithReason) {
  const Report r = run(parse_config(
      "case = cauchy-riccati\ndomain = -1.5 1.5 -1.5 1.5\n"
      "oracle = exp_family nu=1 theta=0\noracle = exp_family nu=1 theta=0.9273\n"
      "contour = polyline 0 0 1 0 1 1 4\n"));
  ASSERT_EQ(r.results.size(), 1u);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.results[0].result.reason, "contour not closed");
  EXPECT_TRUE(to_json(r)["results"][0]["residual"].is_null());
}

TEST(Run, MissingInputsBecomeFailures) {
  const Report r = run(parse_config("case = cauchy-schrodinger\ndomain = -1 1 -1 1\nf = exp(x)\n"));
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.results.at(0).result.reason.empty());
}

TEST(Run, PerturbedPicardFails) {
  const Report r = run(parse_config(
      "case = picard\ndomain = -1 1 -1 1\noracle = exp_family nu=1 theta=0\n"
      "oracle = exp_family nu=1 theta=1\noracle = exp_family nu=2 theta=2\n"
      "oracle = exp_family nu=1 theta=3\n"));
  EXPECT_FALSE(r.pass);
}

TEST(Run, AllSuiteListsAtLeastEightPassingIdentitiesInCaseOrder) {
  const Report r = run(parse_config("case = all\n"));
  EXPECT_GE(r.results.size(), 8u);
  EXPECT_TRUE(r.pass);
  for (std::size_t k = 1; k < r.results.size(); ++k) {
    EXPECT_LE(r.results[k - 1].case_name, r.results[k].case_name);
  }
  for (const auto& c : r.results) EXPECT_TRUE(c.result.pass) << c.case_name << " " << c.result.name;
}

TEST(Run, DeterministicApartFromTiming) {
  const RunConfig cfg = parse_config(kPicard);
  EXPECT_EQ(masked(run(cfg)).dump(), masked(run(cfg)).dump());
  const RunConfig all = parse_config("case = all\n");
  EXPECT_EQ(masked(run(all)).dump(), masked(run(all)).dump());
}

TEST(Run, CsvFieldsAndDumps) {
  const auto dir = std::filesystem::temp_directory_path() / "criccati_cli_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir / "dump");
  const DomainSpec g = DomainSpec::square(1.0, 41);
  write_grid_csv(dir / "u.csv", ScalarField(parse_expression("exp(0.6*x+0.8*y)"), g));
  const RunConfig cfg = parse_config(
      "case = riccati-residual\ndomain = -1 1 -1 1 41\nu = csv:u.csv\nnu = 1\ntolerance = 1e-2\n",
      dir);
  RunOptions opts;
  opts.dump_dir = dir / "dump";
  const Report r = run(cfg, opts);
  ASSERT_EQ(r.results.size(), 2u);
  EXPECT_TRUE(r.pass) << r.results[0].result.reason;
  EXPECT_TRUE(std::filesystem::exists(dir / "dump" / "riccati-residual_0_re.csv"));

  const RunConfig missing = parse_config(
      "case = riccati-residual\ndomain = -1 1 -1 1\nu = csv:nope.csv\nnu = 1\n", dir);
  EXPECT_THROW(run(missing), IoError);
  std::filesystem::remove_all(dir);
}

TEST(Run, ConfigEchoKeepsOracleList) {
  const auto j = to_json(run(parse_config(kPicard)));
  EXPECT_EQ(j["config"]["oracle"].size(), 4u);
  EXPECT_EQ(j["config"]["case"], "picard");
  for (const char* key : {"case", "name", "residual", "tolerance", "pass", "refinement",
                          "elapsed_ms"}) {
    EXPECT_TRUE(j["results"][0].contains(key)) << key;
  }
}
