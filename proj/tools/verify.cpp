// verify: run an identity check described by a config file and print a JSON
// report. Exit status: 0 pass, 1 identity failure, 2 config or usage error,
// 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "criccati/cli.hpp"
#include "criccati/errors.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Riccati/Schrodinger identities"};
  std::string config_path, out_path, dump_dir;
  std::optional<int> refine;
  app.add_option("--config", config_path, "Run config (key = value lines)")->required();
  app.add_option("--out", out_path, "Write the JSON report here instead of stdout");
  app.add_option("--dump-fields", dump_dir, "Write residual fields as grid CSV into DIR");
  app.add_option("--refine", refine, "Grid levels for finite-difference refinement tables")
      ->check(CLI::Range(0, 6));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  namespace cli = criccati::cli;
  try {
    const cli::RunConfig cfg = cli::load_config(config_path);
    cli::RunOptions opts;
    opts.refine = refine;
    if (!dump_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(dump_dir, ec);
      if (ec) throw criccati::IoError("cannot create " + dump_dir + ": " + ec.message());
      opts.dump_dir = dump_dir;
    }
    const cli::Report report = cli::run(cfg, opts);
    const std::string text = cli::to_json(report).dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      out << text;
      if (!out) throw criccati::IoError("cannot write " + out_path);
    }
    return report.pass ? kPass : kFail;
  } catch (const criccati::IoError& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kIo;
  } catch (const criccati::ParseError& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kUsage;
  } catch (const criccati::ConfigError& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kUsage;
  } catch (const criccati::Error& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kUsage;
  }
}
