// hetsim: command-line front end for the two-tier downtilt simulator.
//
//   hetsim simulate|sweep|radius|validate [--config FILE] [--out FILE]
//          [--seed N] [--workers N] [--set section.key=value]... [--format csv|jsonl]
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hetsim/config.hpp"
#include "hetsim/errors.hpp"
#include "hetsim/report.hpp"
#include "hetsim/simulation.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct RunOptions
{
  std::string command;
  std::string config_path;
  std::string out_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
  std::string format = "csv";
};

void write(const RunOptions& opts, const std::string& content)
{
  if (opts.out_path.empty())
    std::cout << content << std::flush;
  else
    hetsim::emit_results(opts.out_path, content);
}

int run(const RunOptions& opts)
{
  using namespace hetsim;

  ExperimentConfig config =
      opts.config_path.empty() ? parse_config("", opts.overrides)
                               : load_config(opts.config_path, opts.overrides);
  if (opts.seed)
    config.scenario.master_seed = *opts.seed;

  const auto format = parse_output_format(opts.format);
  if (!format)
    throw ConfigError("--format", 0, "unknown output format '" + opts.format + "' (csv, jsonl)");

  const unsigned workers =
      opts.workers ? opts.workers : std::max(1u, std::thread::hardware_concurrency());

  if (opts.command == "validate") {
    write(opts, to_config_text(config));
  } else if (opts.command == "radius") {
    const auto rows = radius_table(config.scenario, config.radius.patterns, config.radius.tilts_deg);
    write(opts, format_radius(rows, *format));
  } else if (opts.command == "simulate") {
    const SweepRow row = simulate(config.scenario, workers);
    write(opts, format_sweep(std::span(&row, 1), *format));
  } else if (opts.command == "sweep") {
    const std::vector<double> tilts = config.sweep.tilts();
    const auto rows = run_sweep(config.scenario, tilts, config.sweep.patterns,
                                config.scenario.power_mode, workers);
    write(opts, format_sweep(rows, *format));
  }
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Monte Carlo simulator for macro/metro networks with metro antenna downtilt"};
  app.require_subcommand(1, 1);

  RunOptions opts;
  auto add_common = [&opts](CLI::App* sub, bool simulation_flags) {
    sub->add_option("--config", opts.config_path, "Configuration file (YAML sections)");
    sub->add_option("--out", opts.out_path, "Output file (default: stdout)");
    sub->add_option("--set", opts.overrides, "Override a config key: section.key=value")
        ->take_all()
        ->allow_extra_args(false);
    if (simulation_flags) {
      sub->add_option("--seed", opts.seed, "Master seed");
      sub->add_option("--workers", opts.workers, "Worker threads (default: hardware threads)")
          ->check(CLI::PositiveNumber);
    }
    sub->add_option("--format", opts.format, "Output format: csv or jsonl");
  };

  add_common(app.add_subcommand("simulate", "Run one scenario"), true);
  add_common(app.add_subcommand("sweep", "Sweep metro pattern x downtilt"), true);
  add_common(app.add_subcommand("radius", "Analytic metro cell radius table"), false);
  add_common(app.add_subcommand("validate", "Check a config and print it normalized"), false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  opts.command = app.get_subcommands().front()->get_name();

  try {
    return run(opts);
  } catch (const hetsim::ConfigError& e) {
    std::cerr << "hetsim: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const hetsim::InvalidParameter& e) {
    std::cerr << "hetsim: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "hetsim: error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
