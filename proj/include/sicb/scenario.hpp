// SPDX-License-Identifier: Apache-2.0
#ifndef SICB_SCENARIO_HPP
#define SICB_SCENARIO_HPP

#include <string>

#include "sicb/channel.hpp"
#include "sicb/phase_grid.hpp"

namespace sicb {

struct SweepSpec {
    double start_deg = -90.0;
    double stop_deg = 90.0;
    double step_deg = 5.0;
};

/// Full evaluation setup: device geometry, radio constants, quantization,
/// worst-case target and the communication requirement.
struct Scenario {
    std::string name;
    DeviceGeometry geometry;
    RadioConfig radio;
    int bits = 8;
    WorstCaseTarget target;
    double comm_direction_deg = 45.0;
    double comm_threshold = 3.0; ///< c
    SweepSpec sweep;

    PhaseGrid grid() const { return PhaseGrid::make(bits); }
    arma::uword rx_count() const { return geometry.rx_positions.size(); }
    arma::uword tx_count() const { return geometry.tx_positions.size(); }
};

/// Built-in presets. A: two opposed horizontal 4-element arrays, 8-bit
/// phases, c = 3. B: two 8-element vertical edge arrays, 4-bit phases, c = 6.
Scenario preset_a();
Scenario preset_b();

/// Load a scenario from a JSON file, or by preset name "A"/"B".
/// Throws ParseError on malformed input and ValidationError on violated
/// invariants (named field in the message).
Scenario load_scenario(const std::string& path_or_preset);

/// Serialize a scenario to the JSON schema accepted by load_scenario.
std::string scenario_to_json(const Scenario& s);

void validate_scenario(const Scenario& s);

} // namespace sicb

#endif
