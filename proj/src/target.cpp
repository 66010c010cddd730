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

#include "backscatter/target.hpp"
#include "backscatter/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace backscatter
{

void TargetSpec::validate() const
{
    if (std::isnan(sigma0_dbsm) || sigma0_dbsm == std::numeric_limits<double>::infinity())
        throw DomainError("Target RCS must be a finite dBsm value or -inf.");
    if (!(coherence_time_s > 0.0))
        throw DomainError("Target coherence time must be positive.");
}

void Trajectory::validate() const
{
    if (waypoints.empty())
        throw DomainError("Trajectory needs at least one waypoint.");
    for (std::size_t i = 0; i < waypoints.size(); ++i)
    {
        const auto &w = waypoints[i];
        if (!std::isfinite(w.t_s) || !std::isfinite(w.position.x_m) || !std::isfinite(w.position.y_m))
            throw DomainError("Trajectory waypoints must be finite.");
        if (i > 0 && !(w.t_s > waypoints[i - 1].t_s))
            throw DomainError("Trajectory waypoint times must be strictly increasing.");
        if (w.position.x_m == 0.0 && w.position.y_m == 0.0)
            throw DomainError("Trajectory waypoint coincides with the radar.");
    }
}

TargetState trajectory_state(const Trajectory &traj, double t_s)
{
    traj.validate();
    const auto &wp = traj.waypoints;
    if (!(t_s >= traj.start_s() && t_s <= traj.end_s()))
        throw DomainError("Time lies outside the trajectory span.");

    Position2 p = wp.front().position;
    if (wp.size() > 1)
    {
        auto it = std::upper_bound(wp.begin(), wp.end(), t_s, [](double t, const Waypoint &w) { return t < w.t_s; });
        if (it == wp.end())
            p = wp.back().position;
        else
        {
            const Waypoint &b = *it;
            const Waypoint &a = *(it - 1);
            const double w = (t_s - a.t_s) / (b.t_s - a.t_s);
            p = {a.position.x_m + w * (b.position.x_m - a.position.x_m),
                 a.position.y_m + w * (b.position.y_m - a.position.y_m)};
        }
    }

    TargetState s;
    s.range_m = std::hypot(p.x_m, p.y_m);
    if (!(s.range_m > 0.0))
        throw DomainError("Target passes through the radar position.");
    double b = rad_to_deg(std::atan2(p.y_m, p.x_m));
    if (b < 0.0)
        b += 360.0;
    if (b >= 360.0)
        b -= 360.0;
    s.bearing_deg = b;
    return s;
}

double radar_equation_ratio(double wavelength_m, double rcs_m2, double range_m, double g_t, double g_r)
{
    if (!(range_m > 0.0))
        throw DomainError("Target range must be positive.");
    const double four_pi = 2.0 * two_pi;
    const double r2 = range_m * range_m;
    return wavelength_m * wavelength_m * rcs_m2 * g_t * g_r / (four_pi * four_pi * four_pi * r2 * r2);
}

double target_response(const TargetState &state, const TargetSpec &spec, std::complex<double> xi,
                       const CarrierSpec &carrier, const AntennaPattern &rx, const AntennaPattern &tx,
                       double pointing_deg, std::optional<double> tx_pointing_deg)
{
    spec.validate();
    if (!(state.range_m > 0.0))
        throw DomainError("Target range must be positive.");
    const double g_r = rx.gain_at(state.bearing_deg - pointing_deg);
    const double g_t = tx.gain_at(state.bearing_deg - (tx_pointing_deg ? *tx_pointing_deg : pointing_deg));
    const double fluct = spec.model == FluctuationModel::Constant ? 1.0 : std::norm(xi);
    return radar_equation_ratio(carrier.wavelength_m(), spec.sigma0_m2(), state.range_m, g_t, g_r) * fluct;
}

void SceneSpec::validate() const
{
    room.validate();
    clutter.validate();
    if (target)
        target->validate();
    trajectory.validate();
    if (!(spin_period_s > 0.0) || !(sample_rate_hz > 0.0))
        throw ConfigurationError("Spin period and sample rate must be positive.");
    if (trajectory.start_s() < 0.0)
        throw ConfigurationError("Trajectory must start at or after t = 0.");
    if (duration_s && !(*duration_s + 1e-9 >= trajectory.end_s()))
        throw ConfigurationError("Scene duration does not cover the trajectory span.");
    if (!(resolved_duration_s() > 0.0))
        throw ConfigurationError("Scene duration must be positive.");
    if (target && target->model == FluctuationModel::SwerlingI && target->coherence_time_s < 2.0 / sample_rate_hz)
        throw ConfigurationError("Target coherence time is under-resolved at this sample rate.");
}

double SceneSpec::resolved_duration_s() const
{
    return duration_s ? *duration_s : trajectory.end_s();
}

std::size_t SceneSpec::sample_count() const
{
    return static_cast<std::size_t>(std::floor(resolved_duration_s() * sample_rate_hz + 1e-9)) + 1;
}

SceneSpec default_walking_scene(double speed_mps)
{
    if (!(speed_mps > 0.0))
        throw DomainError("Walking speed must be positive.");
    SceneSpec s;
    const double leg = 3.0 / speed_mps;
    s.trajectory.waypoints = {{0.0, {-3.0, 1.5}}, {leg, {0.0, 1.5}}, {2.0 * leg, {-3.0, 1.5}}};
    return s;
}

std::vector<double> TimeAzimuthMap::binned_db() const
{
    std::vector<double> out(binned.size());
    std::transform(binned.begin(), binned.end(), out.begin(), [](double p) { return to_db(p); });
    return out;
}

TimeAzimuthMap compose_scene(const SceneSpec &spec, const RandomStream &stream)
{
    spec.validate();

    const AzimuthGrid &grid = spec.grid;
    const AntennaPattern rx = make_pattern(spec.rx_kind, grid);
    const AntennaPattern tx = make_pattern(spec.tx_kind, grid);
    const CarrierSpec &carrier = spec.clutter.carrier;
    const double k = carrier.wavenumber();
    const double fs = spec.sample_rate_hz;
    const double period = spec.spin_period_s;
    const std::size_t n = spec.sample_count();

    const double per_rotation = fs * period;
    const std::size_t columns = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(per_rotation)));
    const bool integral = std::abs(per_rotation - static_cast<double>(columns)) < 1e-9;

    RandomStream clutter_stream = stream.child("clutter");
    AzimuthField field;
    std::size_t field_rotation = 0;
    if (spec.regenerate_clutter)
    {
        RandomStream s = clutter_stream.child("rotation", 0);
        field = gen_azimuth_channel(spec.room, spec.clutter, grid, {}, s);
    }
    else
        field = gen_azimuth_channel(spec.room, spec.clutter, grid, {}, clutter_stream);

    std::vector<std::complex<double>> xi;
    if (spec.target && spec.target->model == FluctuationModel::SwerlingI)
    {
        RandomStream ts = stream.child("target");
        xi = complex_gaussian_series(static_cast<double>(n) / fs, fs, spec.target->coherence_time_s, ts);
    }

    std::vector<std::optional<SpinTaps>> cache(integral ? columns : 0);

    TimeAzimuthMap map;
    map.columns = columns;
    map.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        SceneSample s;
        s.t_s = static_cast<double>(i) / fs;
        const std::size_t rotation = integral ? i / columns : static_cast<std::size_t>(std::floor(s.t_s / period + 1e-9));
        s.pointing_deg = integral ? 360.0 * static_cast<double>(i % columns) / static_cast<double>(columns)
                                  : std::fmod(360.0 * s.t_s / period, 360.0);

        if (spec.regenerate_clutter && rotation != field_rotation)
        {
            RandomStream rs = clutter_stream.child("rotation", rotation);
            field = gen_azimuth_channel(spec.room, spec.clutter, grid, {}, rs);
            field_rotation = rotation;
        }

        std::complex<double> y;
        if (integral)
        {
            auto &slot = cache[i % columns];
            if (!slot)
                slot = spin_taps(grid, rx, tx, s.pointing_deg, spec.tx_pointing_deg);
            y = spin_amplitude(field.amplitudes, *slot);
        }
        else
            y = spin_amplitude(field.amplitudes, spin_taps(grid, rx, tx, s.pointing_deg, spec.tx_pointing_deg));

        if (spec.target && s.t_s >= spec.trajectory.start_s() && s.t_s <= spec.trajectory.end_s())
        {
            const TargetState st = trajectory_state(spec.trajectory, s.t_s);
            const double mean_power =
                target_response(st, *spec.target, {1.0, 0.0}, carrier, rx, tx, s.pointing_deg, spec.tx_pointing_deg);
            const std::complex<double> fluct = xi.empty() ? std::complex<double>{1.0, 0.0} : xi[i];
            const std::complex<double> a = std::sqrt(mean_power) * fluct * std::polar(1.0, -2.0 * k * st.range_m);
            s.target = st;
            s.target_power = std::norm(a);
            y += a;
        }
        s.power = std::norm(y);
        map.samples.push_back(s);
    }

    map.rotations = n / columns;
    map.binned.assign(map.rotations * columns, 0.0);
    for (std::size_t i = 0; i < n; ++i)
    {
        const SceneSample &s = map.samples[i];
        const std::size_t rotation = integral ? i / columns : static_cast<std::size_t>(std::floor(s.t_s / period + 1e-9));
        if (rotation >= map.rotations)
            continue;
        const std::size_t column = integral ? i % columns
                                            : static_cast<std::size_t>(std::llround(s.pointing_deg / 360.0 *
                                                                                    static_cast<double>(columns))) %
                                                  columns;
        map.binned[rotation * columns + column] = s.power;
    }
    return map;
}

} // namespace backscatter
