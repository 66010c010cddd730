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

#ifndef BACKSCATTER_CLUTTER_HPP
#define BACKSCATTER_CLUTTER_HPP

#include "backscatter/antenna.hpp"
#include "backscatter/model.hpp"
#include "backscatter/random_fields.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace backscatter
{

using cdouble = std::complex<double>;

struct ClutterParams
{
    double sigma_v_db = 4.0;  // location-level spread of the local average
    double sigma_db = 7.0;    // azimuthal variation about the local average
    double phi_rms_deg = 1.0; // azimuthal correlation scale
    CarrierSpec carrier{};

    void validate() const;
    LognormalFieldParams azimuth_field() const { return {sigma_db, phi_rms_deg}; }
};

struct Position2
{
    double x_m = 0.0;
    double y_m = 0.0;
};

// Per-bin amplitude scale that makes the pointing-averaged spun power equal the local average
// for a fixed (or omni) transmit antenna: with independent phases per bin the discrete angular sum
// yields mean power proportional to dphi / (2 pi), which this factor cancels.
inline double spin_calibration(const AzimuthGrid &grid) { return two_pi / grid.delta_phi_rad(); }

// One clutter channel instantiation: complex arrival amplitudes per azimuth bin at a location
struct AzimuthField
{
    AzimuthGrid grid;
    std::vector<cdouble> amplitudes;
    double p_v_db = 0.0;      // drawn location-level offset
    double p0 = 0.0;          // closed-form average backscatter ratio (linear)
    Position2 location;
    double wavelength_m = 0.0;

    // Same channel observed from another transceiver position: only the two-way phases move
    AzimuthField at_location(Position2 where) const;
};

AzimuthField gen_azimuth_channel(const RoomSpec &room, const ClutterParams &params, const AzimuthGrid &grid,
                                 Position2 location, RandomStream &stream);

// Sparse angular weights f_R(phi_i - phi_R) f_T(phi_i - phi_T) dphi for one pointing
struct SpinTaps
{
    double pointing_deg = 0.0;
    std::vector<std::pair<std::uint32_t, double>> taps;
};

// tx_pointing_deg: fixed transmit boresight, or nullopt to rotate the transmitter with the receiver
SpinTaps spin_taps(const AzimuthGrid &grid, const AntennaPattern &rx, const AntennaPattern &tx, double pointing_deg,
                   std::optional<double> tx_pointing_deg);

// Received complex amplitude Y / sqrt(P_T) for one pointing
cdouble spin_amplitude(std::span<const cdouble> amplitudes, const SpinTaps &taps);

struct SpunSpectrum
{
    std::vector<double> pointing_deg;
    std::vector<double> power; // |Y|^2 / P_T
    double p0 = 0.0;
    double p_v_db = 0.0;

    std::vector<double> power_db() const;
};

// Full-circle uniform pointing list: n pointings starting at 0 deg
std::vector<double> uniform_pointings(std::size_t n);

// Spinning-antenna response by circular convolution of the channel with the antenna patterns.
// Throws DomainError on an empty pointing list.
SpunSpectrum spin_response(const AzimuthField &field, const AntennaPattern &rx, const AntennaPattern &tx,
                           std::span<const double> pointings_deg, std::optional<double> tx_pointing_deg = 0.0);

// Peak-normalized reverberant delay envelope, zero before the round trip to the nearest wall
double pdp_envelope(double tau_s, double d_s_m, double t_rev_s);

struct DelayGrid
{
    double delta_tau_s = 0.1e-9;
    double tau_max_s = 0.0;
    double onset_s = 0.0; // 2 d_s / c

    void validate() const;
    std::size_t size() const;
    double tau(std::size_t m) const { return static_cast<double>(m) * delta_tau_s; }
    std::size_t first_active_bin() const; // first bin with tau >= onset

    // delta_tau = 0.1 ns, tau_max at the -40 dB point of the envelope
    static DelayGrid for_room(const RoomSpec &room, double delta_tau_s = 0.1e-9);
};

struct DelayAzimuthField
{
    DelayGrid delay;
    AzimuthGrid azimuth;
    std::vector<cdouble> amplitudes; // row-major [delay bin][azimuth bin]
    double p_v_db = 0.0;
    double p0 = 0.0;

    std::span<const cdouble> row(std::size_t m) const
    {
        return std::span<const cdouble>(amplitudes).subspan(m * azimuth.size(), azimuth.size());
    }
};

DelayAzimuthField gen_delay_azimuth_channel(const RoomSpec &room, const ClutterParams &params, const DelayGrid &delay,
                                            const AzimuthGrid &azimuth, RandomStream &stream);

enum class ProbeShape
{
    Hamming,
    Rect,
    Tabulated
};

// Sampled probe pulse x(t), t = k * dt, with sum |x|^2 dt = 1
struct ProbeWaveform
{
    std::vector<cdouble> samples;
    double dt_s = 0.0;
    double bandwidth_hz = 0.0;
    ProbeShape shape = ProbeShape::Hamming;

    double duration_s() const { return samples.empty() ? 0.0 : static_cast<double>(samples.size() - 1) * dt_s; }
    double energy() const;
    cdouble value_at(double t_s) const; // linear interpolation, zero outside the pulse
};

// Pulse of duration 1 / bandwidth. Throws ConfigurationError when sample_rate < 10 * bandwidth.
ProbeWaveform make_probe_waveform(double bandwidth_hz, double sample_rate_hz, ProbeShape shape = ProbeShape::Hamming);

// Arbitrary pulse samples rescaled to unit energy
ProbeWaveform make_tabulated_probe(std::vector<cdouble> samples, double dt_s, double bandwidth_hz);

// Received power over (pointing, delay) for a band-limited probe
struct PowerDelayMap
{
    std::vector<double> pointing_deg;
    std::vector<double> delay_s;
    std::vector<double> power; // row-major [pointing][delay], |r|^2 / P_T for a unit-energy probe
    double onset_s = 0.0;

    double at(std::size_t p, std::size_t m) const { return power[p * delay_s.size() + m]; }
    std::vector<double> azimuth_average() const;
};

// Angle convolution with the patterns followed by delay convolution with the probe.
// Throws ConfigurationError when the probe is sampled more coarsely than the delay grid.
PowerDelayMap band_limit(const DelayAzimuthField &field, const ProbeWaveform &waveform, const AntennaPattern &rx,
                         const AntennaPattern &tx, std::span<const double> pointings_deg,
                         std::optional<double> tx_pointing_deg = 0.0);

} // namespace backscatter

#endif
