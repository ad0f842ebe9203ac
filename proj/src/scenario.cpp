// SPDX-License-Identifier: Apache-2.0
#include "sicb/scenario.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

namespace sicb {

namespace {

using nlohmann::json;

constexpr double kDeviceWidth = 0.150;  // m
constexpr double kDeviceHeight = 0.075; // m

RadioConfig default_radio() {
    return RadioConfig::from_carrier(28e9, 20.0, -110.0, 0.16, 0.67, 1.0, 1.0);
}

} // namespace

Scenario preset_a() {
    Scenario s;
    s.name = "A";
    s.radio = default_radio();
    const double spacing = s.radio.wavelength_m / 2.0;
    // 4-element horizontal arrays centered on the top (TX) and bottom (RX) edges
    s.geometry.tx_positions = DeviceGeometry::ula(kDeviceWidth / 2, kDeviceHeight, 1, 0, 4, spacing);
    s.geometry.rx_positions = DeviceGeometry::ula(kDeviceWidth / 2, 0.0, 1, 0, 4, spacing);
    s.bits = 8;
    s.target = {10.0, -10.0};
    s.comm_direction_deg = 45.0;
    s.comm_threshold = 3.0;
    s.sweep = {-90.0, 90.0, 5.0};
    return s;
}

Scenario preset_b() {
    Scenario s;
    s.name = "B";
    s.radio = default_radio();
    const double spacing = s.radio.wavelength_m / 2.0;
    // 8-element vertical arrays on the left (RX) and right (TX) edges,
    // array centers offset by 20 mm vertically
    s.geometry.rx_positions =
        DeviceGeometry::ula(0.0, kDeviceHeight / 2 + 0.010, 0, 1, 8, spacing);
    s.geometry.tx_positions =
        DeviceGeometry::ula(kDeviceWidth, kDeviceHeight / 2 - 0.010, 0, 1, 8, spacing);
    s.bits = 4;
    s.target = {10.0, -10.0};
    s.comm_direction_deg = 45.0;
    s.comm_threshold = 6.0;
    s.sweep = {-90.0, 90.0, 5.0};
    return s;
}

void validate_scenario(const Scenario& s) {
    if (s.bits < 1 || s.bits > 16)
        throw ValidationError("scenario field 'bits' must lie in [1, 16]");
    s.geometry.validate();
    if (s.radio.carrier_hz <= 0.0)
        throw ValidationError("scenario field 'radio.carrier_hz' must be positive");
    const double lam = kSpeedOfLight / s.radio.carrier_hz;
    if (std::abs(s.radio.wavelength_m - lam) > 1e-9 * lam)
        throw ValidationError("scenario field 'radio.wavelength_m' is inconsistent with the carrier");
    if (s.radio.g2 < 0 || s.radio.g3 < 0 || s.radio.gt < 0 || s.radio.gr < 0)
        throw ValidationError("scenario radio gains must be nonnegative");
    if (s.target.distance_m <= 0.0)
        throw ValidationError("scenario field 'target.distance_m' must be positive");
    if (s.sweep.step_deg <= 0.0)
        throw ValidationError("scenario field 'sweep.step_deg' must be positive");
    if (std::abs(s.sweep.start_deg) > 90.0 || std::abs(s.sweep.stop_deg) > 90.0)
        throw ValidationError("scenario sweep angles must lie within [-90, 90] degrees");
    if (s.sweep.stop_deg < s.sweep.start_deg)
        throw ValidationError("scenario field 'sweep.stop_deg' must be >= start_deg");
    if (std::abs(s.comm_direction_deg) > 90.0)
        throw ValidationError("scenario field 'comm_direction_deg' must lie within [-90, 90]");
    if (s.comm_threshold < 0.0)
        throw ValidationError("scenario field 'comm_threshold' must be nonnegative");
    const double m = static_cast<double>(s.tx_count());
    if (s.comm_threshold > m)
        throw ValidationError("scenario field 'comm_threshold' exceeds the TX array gain ceiling");
}

namespace {

const json& require(const json& j, const char* field) {
    if (!j.contains(field))
        throw ValidationError(std::string("scenario file is missing required field '") + field + "'");
    return j.at(field);
}

std::vector<std::array<double, 2>> parse_positions(const json& arr, const char* field) {
    if (!arr.is_array() || arr.empty())
        throw ValidationError(std::string("scenario field '") + field +
                              "' must be a nonempty array of [x, y] pairs");
    std::vector<std::array<double, 2>> out;
    for (const auto& p : arr) {
        if (!p.is_array() || p.size() != 2)
            throw ValidationError(std::string("scenario field '") + field +
                                  "' entries must be [x, y] pairs");
        out.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return out;
}

} // namespace

Scenario load_scenario(const std::string& path_or_preset) {
    if (path_or_preset == "A" || path_or_preset == "a") return preset_a();
    if (path_or_preset == "B" || path_or_preset == "b") return preset_b();

    std::ifstream in(path_or_preset);
    if (!in) throw IoError("cannot open scenario file: " + path_or_preset);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario parse error: ") + e.what());
    }

    Scenario s;
    try {
        s.name = j.value("name", path_or_preset);
        const json& radio = require(j, "radio");
        const double carrier = require(radio, "carrier_hz").get<double>();
        s.radio = RadioConfig::from_carrier(
            carrier, require(radio, "tx_power_dbm").get<double>(),
            require(radio, "noise_power_dbm").get<double>(), require(radio, "g2").get<double>(),
            require(radio, "g3").get<double>(), radio.value("gt", 1.0), radio.value("gr", 1.0));
        if (radio.contains("wavelength_m")) s.radio.wavelength_m = radio["wavelength_m"].get<double>();
        const json& geom = require(j, "geometry");
        s.geometry.tx_positions = parse_positions(require(geom, "tx_positions"), "geometry.tx_positions");
        s.geometry.rx_positions = parse_positions(require(geom, "rx_positions"), "geometry.rx_positions");
        s.bits = require(j, "bits").get<int>();
        const json& target = require(j, "target");
        s.target.distance_m = require(target, "distance_m").get<double>();
        s.target.rcs_dbsm = require(target, "rcs_dbsm").get<double>();
        s.comm_direction_deg = require(j, "comm_direction_deg").get<double>();
        s.comm_threshold = require(j, "comm_threshold").get<double>();
        const json& sweep = require(j, "sweep");
        s.sweep.start_deg = require(sweep, "start_deg").get<double>();
        s.sweep.stop_deg = require(sweep, "stop_deg").get<double>();
        s.sweep.step_deg = require(sweep, "step_deg").get<double>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("scenario field error: ") + e.what());
    }
    validate_scenario(s);
    return s;
}

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["name"] = s.name;
    j["radio"] = {{"carrier_hz", s.radio.carrier_hz},
                  {"wavelength_m", s.radio.wavelength_m},
                  {"tx_power_dbm", s.radio.tx_power_dbm},
                  {"noise_power_dbm", s.radio.noise_power_dbm},
                  {"g2", s.radio.g2},
                  {"g3", s.radio.g3},
                  {"gt", s.radio.gt},
                  {"gr", s.radio.gr}};
    json tx = json::array(), rx = json::array();
    for (const auto& p : s.geometry.tx_positions) tx.push_back({p[0], p[1]});
    for (const auto& p : s.geometry.rx_positions) rx.push_back({p[0], p[1]});
    j["geometry"] = {{"tx_positions", tx}, {"rx_positions", rx}};
    j["bits"] = s.bits;
    j["target"] = {{"distance_m", s.target.distance_m}, {"rcs_dbsm", s.target.rcs_dbsm}};
    j["comm_direction_deg"] = s.comm_direction_deg;
    j["comm_threshold"] = s.comm_threshold;
    j["sweep"] = {{"start_deg", s.sweep.start_deg},
                  {"stop_deg", s.sweep.stop_deg},
                  {"step_deg", s.sweep.step_deg}};
    return j.dump(2);
}

} // namespace sicb
