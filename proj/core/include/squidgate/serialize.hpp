#pragma once

#include <json.hpp>

#include "squidgate/device.hpp"
#include "squidgate/protocol.hpp"
#include "squidgate/spectrum.hpp"
#include "squidgate/verify.hpp"

namespace squidgate {

// Complex amplitudes are stored as [re, im] pairs throughout.

nlohmann::json state_to_json(const SystemState& state);
SystemState state_from_json(const nlohmann::json& j);

/// Schema: {n, steps: [{kind, squid, duration_s, phase_rad}], couplings,
/// total_time_s}. Unknown keys are rejected on load; the Rabi rate and
/// retune gap are reconstructed from the pulse durations and the total.
nlohmann::json schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(const nlohmann::json& j);

nlohmann::json gate_report_to_json(const GateReport& report);
nlohmann::json spectrum_to_json(const SpectrumResult& result);
nlohmann::json feasibility_to_json(const FeasibilityReport& report);

/// Resolved modelling conventions, attached to every report so the
/// numbers are self-describing.
nlohmann::json conventions_json(PhotonEnergyConvention convention);

}  // namespace squidgate
