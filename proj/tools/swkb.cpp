// swkb: semiclassical spectra, wavefunctions and classical-limit scans.

#include <iostream>

#include <CLI11.hpp>

#include "swkb/cli/commands.hpp"
#include "swkb/cli/config.hpp"
#include "swkb/errors.hpp"

namespace {

struct Flags {
  std::string config;
  swkb::cli::Overrides overrides;
};

void add_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config, "JSON config file or run manifest")->check(CLI::ExistingFile);
  cmd->add_option("--out", flags.overrides.out, "output directory");
  cmd->add_option("--alpha", flags.overrides.alpha, "screening parameter override");
  cmd->add_option("--rule", flags.overrides.rule, "quantization rule")->check(CLI::IsMember({"half", "old"}));
  cmd->add_option("--format", flags.overrides.format, "table format")->check(CLI::IsMember({"csv", "json", "both"}));
  cmd->add_option("--seed", flags.overrides.seed, "seed for randomized validation checks");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace swkb::cli;
  CLI::App app{"alpha-scaled WKB solver"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  Flags flags;
  const std::pair<const char*, const char*> commands[] = {
      {"spectrum", "WKB (half and old rules) and oracle energy levels"},
      {"wavefunction", "WKB and oracle wavefunction samples for one level"},
      {"sweep-alpha", "|S_alpha - S_0| over a list of alpha values"},
      {"validate", "run the invariant and acceptance checks"},
  };
  for (const auto& [name, help] : commands) add_flags(app.add_subcommand(name, help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig config;
  try {
    config = flags.config.empty() ? default_config() : load_config(flags.config);
    apply_overrides(config, flags.overrides);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const CommandResult result = run_command(command, config);
    for (const auto& file : result.files) std::cout << file.string() << '\n';
    std::cout << command << ": " << result.summary << '\n';
    return result.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const swkb::Error& e) {
    std::cerr << command << " failed: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << command << " failed: " << e.what() << '\n';
    return 1;
  }
}
