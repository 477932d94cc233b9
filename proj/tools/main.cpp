#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "squidgate/dynamics.hpp"
#include "squidgate/units.hpp"

namespace {

constexpr int kExitCheckFailure = 1;
constexpr int kExitUsageError = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulator and feasibility calculator for an n-qubit controlled phase "
      "gate on three-level SQUIDs coupled through one resonator mode"};
  app.require_subcommand(1);

  squidgate::cli::Overrides overrides;
  std::string input = "all";
  std::string schedule_path;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", overrides.config_path,
                    "JSON parameter file (default: the bundled device table)");
    sub->add_option("--out", overrides.output_dir, "output directory");
    sub->add_option("--seed", overrides.seed,
                    "random seed for property checks");
    sub->add_option("--n", overrides.n, "qubit count override");
    sub->add_option("--n-max", overrides.n_max,
                    "resonator photon truncation override");
  };

  CLI::App* simulate = app.add_subcommand(
      "simulate", "run the pulse schedule on one basis input or all of them");
  add_common(simulate);
  simulate->add_option("--input", input,
                       "computational basis bits (e.g. 111) or 'all'");
  simulate->add_option("--schedule", schedule_path,
                       "run a saved schedule JSON instead of building one");

  CLI::App* verify = app.add_subcommand(
      "verify",
      "check the gate against the truth table, the step-by-step reference "
      "trace (n = 3) and coupling-rescaling invariance");
  add_common(verify);
  verify->add_option("--schedule", schedule_path,
                     "verify a saved schedule JSON instead of building one");

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "solve the SQUID level structure from its potential");
  add_common(spectrum);
  spectrum->add_option("--beta-l", overrides.beta_l,
                       "screening parameter override (0: harmonic limit)");
  spectrum->add_option("--grid", overrides.grid, "grid points override");
  spectrum->add_option("--levels", overrides.levels,
                       "number of eigenlevels override");

  CLI::App* feasibility = app.add_subcommand(
      "feasibility",
      "coupling constants, time budget, photon lifetime and crosstalk bound");
  add_common(feasibility);
  feasibility->add_option("--q", overrides.q,
                          "resonator quality factor override");
  feasibility->add_option("--mutual-m", overrides.mutual_m,
                          "nearest-SQUID mutual inductance override, H");

  CLI::App* budget = app.add_subcommand(
      "budget", "schedule step counts and the operation-time budget");
  add_common(budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsageError;
  }

  try {
    const squidgate::RunConfig cfg = squidgate::cli::resolve_config(overrides);
    if (simulate->parsed()) {
      return squidgate::cli::cmd_simulate(cfg, input, schedule_path);
    }
    if (verify->parsed()) {
      return squidgate::cli::cmd_verify(cfg, schedule_path);
    }
    if (spectrum->parsed()) return squidgate::cli::cmd_spectrum(cfg);
    if (feasibility->parsed()) return squidgate::cli::cmd_feasibility(cfg);
    if (budget->parsed()) return squidgate::cli::cmd_budget(cfg);
    std::cerr << "no subcommand given\n";
    return kExitUsageError;
  } catch (const squidgate::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const squidgate::TruncationError& e) {
    std::cerr << "truncation error: " << e.what() << "\n";
    return kExitCheckFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kExitCheckFailure;
  }
}
