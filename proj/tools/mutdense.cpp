// mutdense: mutant density analysis for Java-style sources.

#include <CLI11.hpp>
#include <cstdlib>
#include <fmt/format.h>
#include <iostream>

#include "mutdense/config.hpp"
#include "mutdense/fault_model.hpp"
#include "mutdense/metrics.hpp"
#include "mutdense/pipeline.hpp"

namespace {

void print_operators() {
  for (const auto& op : mutdense::operator_catalog()) {
    fmt::print("{:<6} {:<12} {}\n", op.id,
               op.family == mutdense::Family::Traditional ? "traditional"
                                                          : "null-type",
               op.description);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mutant density: mutants per line of code as a "
               "fault-sensitive complexity metric"};
  app.require_subcommand(1);

  mutdense::CliOverrides cli;
  std::string config_file;

  auto* analyze = app.add_subcommand("analyze", "Analyze source trees");
  analyze->add_option("roots", cli.roots, "Directories or files to analyze")
      ->required();
  analyze->add_option("--operators", cli.operators,
                      "Operator families: traditional, null-type or all");
  analyze->add_option("--enable", cli.enable,
                      "Comma-separated operator ids to enable");
  analyze->add_option("--format", cli.formats,
                      "Comma-separated output formats: json, html, svg, text");
  analyze->add_option("--out", cli.out, "Output directory");
  analyze->add_option("--threshold", cli.threshold,
                      "Fail (exit 2) when a unit's combined average exceeds "
                      "this value");
  analyze->add_option("--top-lines", cli.top_lines,
                      "Number of densest lines listed in the text report");
  analyze->add_option("--include", cli.include, "Include glob (repeatable)")
      ->expected(1)
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  analyze->add_option("--exclude", cli.exclude, "Exclude glob (repeatable)")
      ->expected(1)
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  analyze->add_option("--config", config_file, "JSON config file");
  analyze->add_option("--jobs", cli.jobs,
                      "Worker threads (default: $MUTDENSE_JOBS or all cores)");

  app.add_subcommand("operators", "Print the mutation operator catalog");
  app.add_subcommand("version", "Print the tool version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return mutdense::kExitFatal;
  }

  if (app.got_subcommand("version")) {
    fmt::print("mutdense {}\n", mutdense::kToolVersion);
    return mutdense::kExitOk;
  }
  if (app.got_subcommand("operators")) {
    print_operators();
    return mutdense::kExitOk;
  }

  if (const char* env = std::getenv("MUTDENSE_JOBS")) cli.jobs_env = env;
  try {
    std::optional<std::filesystem::path> file;
    if (!config_file.empty()) file = config_file;
    const auto config = mutdense::load_config(cli, file);
    return mutdense::run(config, std::cout, std::cerr);
  } catch (const mutdense::ConfigError& e) {
    fmt::print(stderr, "mutdense: {}\n", e.what());
    return mutdense::kExitFatal;
  }
}
