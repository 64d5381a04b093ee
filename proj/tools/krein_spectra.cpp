// krein-spectra <mode> --config <path> [--json] [--out <path>] [--seed N]
//
// Exit codes: 0 ok, 1 configuration error, 2 numerical failure,
// 3 invariant violation.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "krein/app.hpp"
#include "krein/errors.hpp"

namespace {

int emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream os(path, std::ios::binary);
  os << text;
  if (!os) {
    std::cerr << "error: cannot write " << path << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Krein-extension eigenvalue counting: spectra, counts and bounds"};
  std::string mode_text, config_path, out_path;
  bool json = false;
  std::optional<std::uint64_t> seed;
  cli.add_option("mode", mode_text, "spectrum | count | bound-table | verify | oracle")->required();
  cli.add_option("--config", config_path, "flat key = value configuration file")->required();
  cli.add_flag("--json", json, "emit a JSON report instead of CSV");
  cli.add_option("--out", out_path, "output path (default: stdout)");
  cli.add_option("--seed", seed, "seed for randomized checks");
  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw krein::ValidationError("cannot read config file " + config_path);
    std::stringstream buf;
    buf << in.rdbuf();

    auto config = krein::app::parse_config(buf.str(), krein::app::parse_mode(mode_text));
    if (seed) config.seed = *seed;
    if (out_path.empty() && config.out) out_path = *config.out;

    const auto report = krein::app::run(config);
    const std::string text_out = json ? krein::app::to_json(report) : krein::app::to_csv(report.table);
    if (emit(text_out, out_path) != 0) return 1;
    for (const auto& c : report.checks)
      if (!c.passed) std::cerr << "FAILED " << c.name << ": " << c.property << " (" << c.detail << ")\n";
    return report.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return krein::app::exit_code_for_error(e);
  }
}
