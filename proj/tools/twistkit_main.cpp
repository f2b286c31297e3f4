// Command-line runner for the verification suites: picks a suite, executes it
// with a seeded config, and emits a text or JSON report.  Exit code 0 means
// every check passed, 1 means at least one failed (or was indeterminate),
// 2 means the invocation itself was unusable.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "twistkit/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"twistkit: seeded verification suites for twistor-space linear algebra"};
  twistkit::SuiteConfig config;
  std::string format = "text";
  std::string out_path;
  bool list = false;

  app.add_flag("--list", list, "list the available suites and exit");
  app.add_option("--suite", config.suite, "suite to run (see --list)")
      ->capture_default_str();
  app.add_option("--dim", config.dim, "dimension parameter n")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--samples", config.samples, "sample count per check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", config.seed, "base seed for all sampling")
      ->capture_default_str();
  app.add_option("--tol", config.tol, "tolerance for residual checks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "write the report to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit clean, bad usage exits 2
  }

  if (list) {
    for (const twistkit::SuiteInfo& info : twistkit::list_suites())
      std::printf("%-16s %s\n", info.name.c_str(), info.description.c_str());
    return 0;
  }

  twistkit::SuiteReport report;
  try {
    report = twistkit::run_suite(config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const std::string text = format == "json"
                               ? twistkit::report_to_json(report).dump(2) + "\n"
                               : twistkit::report_to_text(report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot open " << out_path << " for writing\n";
      return 2;
    }
    out << text;
  }
  return report.pass() ? 0 : 1;
}
