#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "doco/config.hpp"
#include "doco/runner.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool out_given = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Config file (key = value lines)");
  cmd->add_option("--set", flags.sets, "Override key=value (repeatable)")
      ->take_all();
  cmd->add_option("--out", flags.out_dir, "Output directory")
      ->each([&flags](const std::string&) { flags.out_given = true; });
  cmd->add_option("--seed", flags.seed, "Run seed")
      ->each([&flags](const std::string&) { flags.seed_given = true; });
}

doco::RunConfig make_config(const CommonFlags& flags) {
  doco::RunConfig config = doco::parse_config(flags.config_path, flags.sets);
  if (flags.out_given) config.out_dir = flags.out_dir;
  if (flags.seed_given) config.seed = flags.seed;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed online convex optimization simulator"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "Execute one configuration");
  add_common(run_cmd, run_flags);

  CommonFlags sweep_flags;
  std::string axis;
  std::string values_csv;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Run once per value of one parameter");
  add_common(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--axis", axis, "Config key to sweep")->required();
  sweep_cmd->add_option("--values", values_csv, "Comma separated values")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const doco::RunConfig config = make_config(run_flags);
      const doco::RunResult result = doco::run_command(config);
      std::cout << "wrote " << config.out_dir << "/trajectory.csv and summary.txt";
      if (result.record.diverged) {
        std::cout << " (diverged at t=" << result.record.diverged_at << ")";
      }
      std::cout << "\n";
    } else {
      const doco::RunConfig base = make_config(sweep_flags);
      std::vector<std::string> values;
      std::size_t from = 0;
      while (from <= values_csv.size()) {
        const auto comma = values_csv.find(',', from);
        if (comma == std::string::npos) {
          values.push_back(values_csv.substr(from));
          break;
        }
        values.push_back(values_csv.substr(from, comma - from));
        from = comma + 1;
      }
      doco::sweep_command(base, axis, values);
      std::cout << "wrote " << base.out_dir << "/sweep.csv and per-run outputs\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
