// SPDX-License-Identifier: Apache-2.0
//
// indoor-backscatter: statistical monostatic clutter and target simulator
// Copyright (C) 2026 The indoor-backscatter authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef BACKSCATTER_CLI_CONFIG_HPP
#define BACKSCATTER_CLI_CONFIG_HPP

#include "backscatter/antenna.hpp"
#include "backscatter/clutter.hpp"
#include "backscatter/model.hpp"
#include "backscatter/stats.hpp"
#include "backscatter/target.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace backscatter::cli
{

struct AntennaConfig
{
    PatternKind kind = GaussianHorn{10.0};
    std::string path; // tabulated source file
};

// Room as written in the configuration (reverberation time in ns)
struct RoomConfig
{
    std::string label = "lab";
    double width_m = 15.0;
    double length_m = 5.0;
    std::optional<double> d_s_m = 2.5;
    SurfaceClass surface = Metal{};
    double t_rev_ns = 10.0;

    RoomSpec spec() const { return RoomSpec{label, width_m, length_m, d_s_m, surface, t_rev_ns * 1e-9}; }
};

struct DelayConfig
{
    double delta_tau_ns = 0.1;
    std::optional<double> tau_max_ns; // default: onset + T_rev ln(1e4)
    double bandwidth_ghz = 1.0;
    double probe_rate_ghz = 20.0;
    ProbeShape shape = ProbeShape::Hamming;
};

struct SceneConfig
{
    std::optional<TargetSpec> target = TargetSpec{};
    std::vector<Waypoint> waypoints; // empty: default side -> center -> side walk
    double walking_speed_mps = 0.9;
    double spin_period_s = 0.2;
    double sample_rate_hz = 740.0;
    std::optional<double> duration_s;
    bool regenerate_clutter = false;
};

struct RunConfig
{
    std::uint64_t seed = 1;
    std::size_t ensemble = 10;
    double carrier_hz = 28.0e9;
    RoomConfig room{};
    std::optional<std::vector<MeasuredRoom>> rooms; // predict input; nullopt: reference rooms
    ClutterParams clutter{};
    double spacing_deg = 0.2;
    std::size_t pointings = 148;
    AntennaConfig rx{GaussianHorn{10.0}, ""};
    AntennaConfig tx{Omni{}, ""};
    std::optional<double> tx_pointing_deg = 0.0; // nullopt: transmitter rotates with the receiver
    DelayConfig delay{};
    SceneConfig scene{};
    std::vector<int> checks; // validate subset, empty = all

    CarrierSpec carrier() const { return CarrierSpec(carrier_hz); }
    ClutterParams clutter_params() const
    {
        ClutterParams c = clutter;
        c.carrier = carrier();
        return c;
    }
    AzimuthGrid grid() const { return AzimuthGrid::with_spacing(spacing_deg); }
    AntennaPattern rx_pattern() const;
    AntennaPattern tx_pattern() const;
    SceneSpec scene_spec() const;
    DelayGrid delay_grid() const;
    ProbeWaveform probe() const;

    // Checks every derived object can be built; throws ConfigurationError otherwise
    void validate() const;
};

// Parses a JSON configuration. A metadata file written by a previous run is accepted too (its
// "config" member is used). Unknown keys and malformed values raise ConfigurationError with the
// source line of the offending key.
RunConfig parse_config(const std::string &text, const std::string &source);
RunConfig load_config(const std::string &path);

// Fully resolved configuration tree, accepted back by parse_config
nlohmann::ordered_json to_json(const RunConfig &config);

} // namespace backscatter::cli

#endif
