// Command-line front end: vacuumctl <command> [--config PATH] [--out DIR]
//                                   [--override section.key=value]...
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vacuum/commands.hpp"
#include "vacuum/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Damped Euler vacuum free-boundary simulator"};
  app.require_subcommand(1);
  // Global options may follow the subcommand name.
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::string input_dir;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "configuration file");
  app.add_option("--out", out_dir, "output directory (overrides output.dir)");
  app.add_option("--override", overrides, "section.key=value, repeatable");

  const std::vector<std::pair<const char*, const char*>> commands{
      {"barenblatt", "profile constants and sampled Barenblatt tables"},
      {"correction", "correction ODE trajectory, phase-plane and decay reports"},
      {"simulate", "perturbation solver run with energy and rate reports"},
      {"refine", "grid refinement study with observed orders"},
      {"sweep", "parallel runs over the sweep parameter grid"},
      {"rates", "re-fit rates from an existing simulate output"},
      {"hardy", "Hardy ratio refinement study"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (std::string(name) == "rates")
      sub->add_option("--input", input_dir, "directory of a finished simulate run");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : vacuum::kExitValidation;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  vacuum::RunConfig config;
  try {
    if (!config_path.empty()) config = vacuum::load_config(config_path);
    for (const auto& o : overrides) vacuum::apply_override(config, o);
    if (!out_dir.empty()) config.output_dir = out_dir;
  } catch (const vacuum::Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return vacuum::exit_code_for(e.kind());
  }

  const vacuum::CommandOutcome outcome =
      vacuum::run_command(command, config, config.output_dir, input_dir);
  std::fprintf(outcome.exit_code == 0 ? stdout : stderr, "%s\n", outcome.summary.c_str());
  return outcome.exit_code;
}
