#pragma once

#include <optional>
#include <string>

#include "squidgate/config.hpp"

namespace squidgate::cli {

/// Command-line overrides layered on top of the loaded configuration.
struct Overrides {
  std::string config_path;  // empty: bundled device table
  std::optional<std::string> output_dir;
  std::optional<unsigned long> seed;
  std::optional<int> n;
  std::optional<int> n_max;
  std::optional<double> q;         // resonator quality factor
  std::optional<double> mutual_m;  // nearest-SQUID mutual inductance, H
  std::optional<double> beta_l;    // SQUID screening parameter
  std::optional<int> grid;         // spectrum grid points
  std::optional<int> levels;       // spectrum eigenlevels
};

/// Loads the configuration (bundled defaults when no path is given) and
/// applies the overrides. Changing n truncates the resolved coupling list
/// or extends it by repeating the last value; placements are truncated but
/// never invented, so device-level commands reject an enlarged n.
RunConfig resolve_config(const Overrides& o);

int cmd_simulate(const RunConfig& cfg, const std::string& input,
                 const std::string& schedule_path);
int cmd_verify(const RunConfig& cfg, const std::string& schedule_path);
int cmd_spectrum(const RunConfig& cfg);
int cmd_feasibility(const RunConfig& cfg);
int cmd_budget(const RunConfig& cfg);

}  // namespace squidgate::cli
