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

#ifndef BACKSCATTER_TARGET_HPP
#define BACKSCATTER_TARGET_HPP

#include "backscatter/antenna.hpp"
#include "backscatter/clutter.hpp"
#include "backscatter/model.hpp"
#include "backscatter/random_fields.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace backscatter
{

enum class FluctuationModel
{
    SwerlingI, // |xi|^2 exponential, Gaussian temporal coherence
    Constant   // xi = 1
};

struct TargetSpec
{
    double sigma0_dbsm = -8.0;      // mean RCS; -inf gives a zero-RCS target
    double coherence_time_s = 0.1;
    FluctuationModel model = FluctuationModel::SwerlingI;

    void validate() const;
    double sigma0_m2() const { return from_db(sigma0_dbsm); }
};

struct Waypoint
{
    double t_s = 0.0;
    Position2 position;
};

// Piecewise-linear path with the radar at the origin
struct Trajectory
{
    std::vector<Waypoint> waypoints;

    // Throws DomainError on an empty list, non-increasing times or a waypoint at the origin
    void validate() const;
    double start_s() const { return waypoints.front().t_s; }
    double end_s() const { return waypoints.back().t_s; }
};

struct TargetState
{
    double range_m = 0.0;
    double bearing_deg = 0.0; // [0, 360)
};

// Throws DomainError outside the waypoint span
TargetState trajectory_state(const Trajectory &traj, double t_s);

// Monostatic radar equation lambda^2 sigma g_t g_r / ((4 pi)^3 R^4). Throws DomainError for R <= 0.
double radar_equation_ratio(double wavelength_m, double rcs_m2, double range_m, double g_t, double g_r);

// Target echo power ratio for a given fluctuation sample. Antenna gains are read from the patterns
// relative to their pointings; tx_pointing_deg = nullopt rotates the transmitter with the receiver.
double target_response(const TargetState &state, const TargetSpec &spec, std::complex<double> xi,
                       const CarrierSpec &carrier, const AntennaPattern &rx, const AntennaPattern &tx,
                       double pointing_deg, std::optional<double> tx_pointing_deg = 0.0);

struct SceneSpec
{
    RoomSpec room{"lab", 15.0, 5.0, 2.5, Metal{}, 1.0e-8};
    ClutterParams clutter{};
    std::optional<TargetSpec> target = TargetSpec{}; // nullopt: clutter only
    Trajectory trajectory;
    PatternKind rx_kind = GaussianHorn{10.0};
    PatternKind tx_kind = Omni{};
    std::optional<double> tx_pointing_deg = 0.0;
    double spin_period_s = 0.2;
    double sample_rate_hz = 740.0;
    std::optional<double> duration_s; // defaults to the trajectory end time
    bool regenerate_clutter = false;   // fresh clutter every rotation instead of a frozen background
    AzimuthGrid grid{};

    void validate() const;
    double resolved_duration_s() const;
    std::size_t sample_count() const;
};

// Side -> center -> side walk at walking speed past a receiver in a 15 m x 5 m lab
SceneSpec default_walking_scene(double speed_mps = 0.9);

struct SceneSample
{
    double t_s = 0.0;
    double pointing_deg = 0.0;
    double power = 0.0;        // |clutter + target|^2 / P_T
    double target_power = 0.0; // target echo alone
    std::optional<TargetState> target;
};

struct TimeAzimuthMap
{
    std::vector<SceneSample> samples;
    std::size_t columns = 0;  // samples per rotation
    std::size_t rotations = 0; // complete rotations held in `binned`
    std::vector<double> binned; // row-major [rotation][column] linear power

    double at(std::size_t rotation, std::size_t column) const { return binned[rotation * columns + column]; }
    std::vector<double> binned_db() const;
};

// Spinning-receiver time series of clutter plus target. Clutter draws come from stream.child("clutter")
// and target fluctuation from stream.child("target"), so dropping the target leaves the clutter intact.
TimeAzimuthMap compose_scene(const SceneSpec &spec, const RandomStream &stream);

} // namespace backscatter

#endif
