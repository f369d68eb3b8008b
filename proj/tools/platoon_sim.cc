#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "platoon/cli.h"

int main(int argc, char** argv) {
  CLI::App app{"Single-lane connected vehicle platoon simulator with "
               "cyberattack injection"};
  app.require_subcommand(1);

  platoon::cli::Options options;
  std::string out_dir = ".";
  double checkpoint = 0.0;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-o,--out", out_dir, "Output directory (created if absent)");
    cmd->add_flag("--plot", options.plot, "Also write SVG figures");
    cmd->add_option("--checkpoint", checkpoint,
                    "Arrival checkpoint in metres (default from scenario)");
    cmd->add_flag("--force", options.force, "Overwrite existing output files");
  };

  std::string scenario;
  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("scenario", scenario, "Scenario JSON file")->required();
  add_common(run);

  std::string baseline, attacked;
  auto* compare =
      app.add_subcommand("compare", "Run a baseline and an attacked scenario "
                                    "and report per-vehicle delays");
  compare->add_option("baseline", baseline, "Baseline scenario JSON")
      ->required();
  compare->add_option("attacked", attacked, "Attacked scenario JSON")
      ->required();
  add_common(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : platoon::cli::kExitError;
  }

  options.out_dir = out_dir;
  if (app.got_subcommand(run) ? run->count("--checkpoint")
                              : compare->count("--checkpoint")) {
    options.checkpoint = checkpoint;
  }

  if (app.got_subcommand(run)) {
    return platoon::cli::cmd_run(scenario, options, std::cout, std::cerr);
  }
  return platoon::cli::cmd_compare(baseline, attacked, options, std::cout,
                                   std::cerr);
}
