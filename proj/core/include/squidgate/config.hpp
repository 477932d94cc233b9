#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "squidgate/device.hpp"
#include "squidgate/spectrum.hpp"

namespace squidgate {

/// Fully resolved run configuration. Parsed from a JSON file in which
/// every physical quantity is a unit-suffixed string ("240pH", "11.4GHz");
/// unknown keys are rejected at every level. Couplings and the Rabi rate
/// may be given explicitly or derived from the device section.
struct RunConfig {
  int n = 3;
  int n_max = 3;
  std::vector<double> couplings;  // rad/s magnitudes, one per SQUID
  bool couplings_from_device = true;
  double rabi = 0.0;              // rad/s
  unsigned long seed = 1;
  std::string output_dir = "out";
  DeviceContext device;           // includes thresholds and conventions
  SpectrumSettings spectrum;
};

/// The bundled reference device parameter set (same content as
/// config/table1.json).
const nlohmann::json& default_config_json();
RunConfig default_config();

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

}  // namespace squidgate
