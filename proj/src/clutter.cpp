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

#include "backscatter/clutter.hpp"
#include "backscatter/errors.hpp"

#include <algorithm>
#include <cmath>

namespace backscatter
{

namespace
{

// Angular taps below this fraction of the strongest one are dropped (amplitude 1e-10, power 1e-20)
constexpr double tap_floor = 1e-10;

double onset_delay(double d_s_m)
{
    return 2.0 * d_s_m / speed_of_light;
}

// Two-way phase 2 k.r for an arrival from azimuth phi
double two_way_phase(double wavenumber, double phi_rad, Position2 r)
{
    return 2.0 * wavenumber * (r.x_m * std::cos(phi_rad) + r.y_m * std::sin(phi_rad));
}

} // namespace

void ClutterParams::validate() const
{
    if (!(sigma_v_db >= 0.0) || !(sigma_db >= 0.0))
        throw DomainError("Clutter standard deviations must be non-negative.");
    if (!(phi_rms_deg > 0.0))
        throw DomainError("Clutter correlation scale phi_rms must be positive.");
}

AzimuthField AzimuthField::at_location(Position2 where) const
{
    AzimuthField out = *this;
    const double k = two_pi / wavelength_m;
    const Position2 shift{where.x_m - location.x_m, where.y_m - location.y_m};
    for (std::size_t i = 0; i < grid.size(); ++i)
        out.amplitudes[i] *= std::polar(1.0, two_way_phase(k, deg_to_rad(grid.angle_deg(i)), shift));
    out.location = where;
    return out;
}

AzimuthField gen_azimuth_channel(const RoomSpec &room, const ClutterParams &params, const AzimuthGrid &grid,
                                 Position2 location, RandomStream &stream)
{
    room.validate();
    params.validate();
    if (grid.delta_phi_deg() > params.phi_rms_deg)
        throw ConfigurationError("Azimuth grid is coarser than phi_rms.");

    AzimuthField field{grid, {}, 0.0, 0.0, location, params.carrier.wavelength_m()};
    field.p0 = average_backscatter_ratio(room.resolved_d_s(), field.wavelength_m, power_reflectivity(room.surface));
    field.p_v_db = lognormal_mean_offset(params.sigma_v_db) + params.sigma_v_db * stream.normal();

    const std::vector<double> p_db = correlated_lognormal_db(grid, params.azimuth_field(), stream);

    const double base = field.p0 * from_db(field.p_v_db) * spin_calibration(grid);
    const double k = params.carrier.wavenumber();
    field.amplitudes.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        const double phase = two_pi * stream.uniform();
        const double phi = deg_to_rad(grid.angle_deg(i));
        field.amplitudes[i] = std::polar(std::sqrt(base * from_db(p_db[i])), phase + two_way_phase(k, phi, location));
    }
    return field;
}

SpinTaps spin_taps(const AzimuthGrid &grid, const AntennaPattern &rx, const AntennaPattern &tx, double pointing_deg,
                   std::optional<double> tx_pointing_deg)
{
    const std::vector<double> fr = rx.sample_on(grid, pointing_deg);
    const std::vector<double> ft = tx.sample_on(grid, tx_pointing_deg ? *tx_pointing_deg : pointing_deg);
    const double dphi = grid.delta_phi_rad();

    std::vector<double> w(grid.size());
    double wmax = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        w[i] = fr[i] * ft[i] * dphi;
        wmax = std::max(wmax, w[i]);
    }

    SpinTaps out;
    out.pointing_deg = pointing_deg;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (w[i] > tap_floor * wmax)
            out.taps.emplace_back(static_cast<std::uint32_t>(i), w[i]);
    return out;
}

cdouble spin_amplitude(std::span<const cdouble> amplitudes, const SpinTaps &taps)
{
    double re = 0.0, im = 0.0;
    for (const auto &[i, w] : taps.taps)
    {
        re += w * amplitudes[i].real();
        im += w * amplitudes[i].imag();
    }
    return {re, im};
}

std::vector<double> SpunSpectrum::power_db() const
{
    std::vector<double> out(power.size());
    std::transform(power.begin(), power.end(), out.begin(), [](double p) { return to_db(p); });
    return out;
}

std::vector<double> uniform_pointings(std::size_t n)
{
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = 360.0 * static_cast<double>(i) / static_cast<double>(n);
    return out;
}

SpunSpectrum spin_response(const AzimuthField &field, const AntennaPattern &rx, const AntennaPattern &tx,
                           std::span<const double> pointings_deg, std::optional<double> tx_pointing_deg)
{
    if (pointings_deg.empty())
        throw DomainError("Spin response needs at least one pointing.");

    SpunSpectrum out;
    out.p0 = field.p0;
    out.p_v_db = field.p_v_db;
    out.pointing_deg.assign(pointings_deg.begin(), pointings_deg.end());
    out.power.reserve(pointings_deg.size());
    for (double pointing : pointings_deg)
    {
        const SpinTaps taps = spin_taps(field.grid, rx, tx, pointing, tx_pointing_deg);
        out.power.push_back(std::norm(spin_amplitude(field.amplitudes, taps)));
    }
    return out;
}

double pdp_envelope(double tau_s, double d_s_m, double t_rev_s)
{
    if (!(d_s_m > 0.0) || !(t_rev_s > 0.0))
        throw DomainError("d_s and reverberation time must be positive.");
    const double onset = onset_delay(d_s_m);
    if (tau_s < onset)
        return 0.0;
    return std::exp(-(tau_s - onset) / t_rev_s);
}

void DelayGrid::validate() const
{
    if (!(delta_tau_s > 0.0))
        throw ConfigurationError("Delay bin width must be positive.");
    if (!(onset_s >= 0.0))
        throw ConfigurationError("Delay onset must be non-negative.");
    if (!(tau_max_s > onset_s))
        throw ConfigurationError("Maximum delay must exceed the onset delay.");
}

std::size_t DelayGrid::size() const
{
    return static_cast<std::size_t>(std::floor(tau_max_s / delta_tau_s + 1e-9)) + 1;
}

std::size_t DelayGrid::first_active_bin() const
{
    auto m = static_cast<std::size_t>(std::max(0.0, std::floor(onset_s / delta_tau_s) - 1.0));
    while (tau(m) < onset_s)
        ++m;
    return m;
}

DelayGrid DelayGrid::for_room(const RoomSpec &room, double delta_tau_s)
{
    room.validate();
    DelayGrid g;
    g.delta_tau_s = delta_tau_s;
    g.onset_s = onset_delay(room.resolved_d_s());
    g.tau_max_s = g.onset_s + std::log(1.0e4) * room.t_rev_s;
    g.validate();
    return g;
}

DelayAzimuthField gen_delay_azimuth_channel(const RoomSpec &room, const ClutterParams &params, const DelayGrid &delay,
                                            const AzimuthGrid &azimuth, RandomStream &stream)
{
    room.validate();
    params.validate();
    delay.validate();
    const double d_s = room.resolved_d_s();
    const double onset = onset_delay(d_s);
    if (std::abs(delay.onset_s - onset) > 1e-9 * onset)
        throw ConfigurationError("Delay grid onset does not match 2 d_s / c of the room.");
    if (azimuth.delta_phi_deg() > params.phi_rms_deg)
        throw ConfigurationError("Azimuth grid is coarser than phi_rms.");

    DelayAzimuthField field{delay, azimuth, {}, 0.0, 0.0};
    field.p0 = average_backscatter_ratio(d_s, params.carrier.wavelength_m(), power_reflectivity(room.surface));
    field.p_v_db = lognormal_mean_offset(params.sigma_v_db) + params.sigma_v_db * stream.normal();

    const std::size_t n_delay = delay.size();
    const std::size_t n_az = azimuth.size();
    field.amplitudes.assign(n_delay * n_az, cdouble{0.0, 0.0});

    const double base = field.p0 * from_db(field.p_v_db) * spin_calibration(azimuth);
    const LognormalFieldParams lp = params.azimuth_field();
    for (std::size_t m = delay.first_active_bin(); m < n_delay; ++m)
    {
        const double envelope = pdp_envelope(delay.tau(m), d_s, room.t_rev_s);
        const std::vector<double> p_db = correlated_lognormal_db(azimuth, lp, stream);
        cdouble *row = field.amplitudes.data() + m * n_az;
        for (std::size_t i = 0; i < n_az; ++i)
            row[i] = std::polar(std::sqrt(base * envelope * from_db(p_db[i])), two_pi * stream.uniform());
    }
    return field;
}

double ProbeWaveform::energy() const
{
    double e = 0.0;
    for (const auto &x : samples)
        e += std::norm(x);
    return e * dt_s;
}

cdouble ProbeWaveform::value_at(double t_s) const
{
    if (samples.empty() || t_s < 0.0)
        return {0.0, 0.0};
    double pos = t_s / dt_s;
    const double r = std::round(pos);
    if (std::abs(pos - r) < 1e-9)
        pos = r;
    const auto last = static_cast<double>(samples.size() - 1);
    if (pos > last)
        return {0.0, 0.0};
    const auto i0 = static_cast<std::size_t>(pos);
    const double w = pos - static_cast<double>(i0);
    if (w == 0.0)
        return samples[i0];
    return (1.0 - w) * samples[i0] + w * samples[i0 + 1];
}

ProbeWaveform make_tabulated_probe(std::vector<cdouble> samples, double dt_s, double bandwidth_hz)
{
    if (samples.empty() || !(dt_s > 0.0))
        throw DomainError("Probe needs samples and a positive sample interval.");
    ProbeWaveform w{std::move(samples), dt_s, bandwidth_hz, ProbeShape::Tabulated};
    const double e = w.energy();
    if (!(e > 0.0) || !std::isfinite(e))
        throw DomainError("Probe samples carry no energy.");
    const double scale = 1.0 / std::sqrt(e);
    for (auto &x : w.samples)
        x *= scale;
    return w;
}

ProbeWaveform make_probe_waveform(double bandwidth_hz, double sample_rate_hz, ProbeShape shape)
{
    if (!(bandwidth_hz > 0.0) || !(sample_rate_hz > 0.0))
        throw DomainError("Bandwidth and sample rate must be positive.");
    if (sample_rate_hz < 10.0 * bandwidth_hz)
        throw ConfigurationError("Probe sample rate must be at least 10x the bandwidth.");
    if (shape == ProbeShape::Tabulated)
        throw DomainError("Use make_tabulated_probe for tabulated pulses.");

    // Pulse spans exactly 1 / bandwidth
    const auto intervals = static_cast<std::size_t>(std::llround(sample_rate_hz / bandwidth_hz));
    const std::size_t n = intervals + 1;
    std::vector<cdouble> x(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        const double v = shape == ProbeShape::Hamming
                             ? 0.54 - 0.46 * std::cos(two_pi * static_cast<double>(k) / static_cast<double>(n - 1))
                             : 1.0;
        x[k] = {v, 0.0};
    }
    ProbeWaveform w = make_tabulated_probe(std::move(x), 1.0 / sample_rate_hz, bandwidth_hz);
    w.shape = shape;
    return w;
}

std::vector<double> PowerDelayMap::azimuth_average() const
{
    const std::size_t nd = delay_s.size();
    std::vector<double> avg(nd, 0.0);
    for (std::size_t p = 0; p < pointing_deg.size(); ++p)
        for (std::size_t m = 0; m < nd; ++m)
            avg[m] += power[p * nd + m];
    for (double &v : avg)
        v /= static_cast<double>(pointing_deg.size());
    return avg;
}

PowerDelayMap band_limit(const DelayAzimuthField &field, const ProbeWaveform &waveform, const AntennaPattern &rx,
                         const AntennaPattern &tx, std::span<const double> pointings_deg,
                         std::optional<double> tx_pointing_deg)
{
    if (pointings_deg.empty())
        throw DomainError("Band-limited map needs at least one pointing.");
    if (waveform.samples.empty())
        throw ConfigurationError("Probe waveform is empty.");
    const DelayGrid &dg = field.delay;
    if (waveform.dt_s > dg.delta_tau_s * (1.0 + 1e-9))
        throw ConfigurationError("Probe sample interval exceeds the delay bin width.");
    if (field.amplitudes.size() != dg.size() * field.azimuth.size())
        throw ConfigurationError("Delay-azimuth field does not match its grids.");

    const std::size_t nd = dg.size();
    const std::size_t m0 = dg.first_active_bin();

    // Probe resampled on the delay grid
    const auto n_pulse = static_cast<std::size_t>(std::floor(waveform.duration_s() / dg.delta_tau_s + 1e-9)) + 1;
    std::vector<cdouble> x(n_pulse);
    for (std::size_t j = 0; j < n_pulse; ++j)
        x[j] = waveform.value_at(dg.tau(j));

    PowerDelayMap map;
    map.pointing_deg.assign(pointings_deg.begin(), pointings_deg.end());
    map.delay_s.resize(nd);
    for (std::size_t m = 0; m < nd; ++m)
        map.delay_s[m] = dg.tau(m);
    map.onset_s = dg.onset_s;
    map.power.assign(pointings_deg.size() * nd, 0.0);

    std::vector<cdouble> y(nd);
    for (std::size_t p = 0; p < pointings_deg.size(); ++p)
    {
        const SpinTaps taps = spin_taps(field.azimuth, rx, tx, pointings_deg[p], tx_pointing_deg);
        std::fill(y.begin(), y.end(), cdouble{0.0, 0.0});
        for (std::size_t m = m0; m < nd; ++m)
            y[m] = spin_amplitude(field.row(m), taps);

        double *out = map.power.data() + p * nd;
        for (std::size_t m = m0; m < nd; ++m)
        {
            cdouble r{0.0, 0.0};
            const std::size_t jmax = std::min(n_pulse - 1, m - m0);
            for (std::size_t j = 0; j <= jmax; ++j)
                r += x[j] * y[m - j];
            out[m] = std::norm(r);
        }
    }
    return map;
}

} // namespace backscatter
