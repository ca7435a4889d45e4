// Command-line front end: runs verification suites for a scenario file.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "eqcw/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Equivariant Chern-Weil verification runner"};
  std::string scenario_path, command, report_path;
  std::optional<int> truncation;
  app.add_option("--scenario", scenario_path, "Scenario file (a previous report is also accepted)")->required();
  app.add_option("--command", command, "verify-core, universal-check, series, anomaly or all")
      ->required()
      ->check(CLI::IsMember(eqcw::command_names()));
  app.add_option("--truncation", truncation, "Override the scenario's truncation degree");
  app.add_option("--report", report_path, "Also write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : eqcw::exit_usage;
  }

  eqcw::RunOutput out;
  try {
    eqcw::Scenario sc = eqcw::load_scenario(scenario_path);
    if (truncation) eqcw::override_truncation(sc, *truncation);
    out = eqcw::run(command, sc);
  } catch (const eqcw::ScenarioError& e) {
    std::cerr << scenario_path << ": " << e.what() << "\n";
    return eqcw::exit_scenario;
  }

  std::cout << out.report;
  if (!report_path.empty()) {
    std::ofstream file(report_path);
    file << out.report;
    if (!file) {
      std::cerr << "cannot write report to " << report_path << "\n";
      return out.exit_code | eqcw::exit_usage;
    }
  }
  return out.exit_code;
}
