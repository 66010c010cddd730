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

#ifndef BACKSCATTER_MODEL_HPP
#define BACKSCATTER_MODEL_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <variant>

namespace backscatter
{

// Speed of light in vacuum, m/s
inline constexpr double speed_of_light = 2.99792458e8;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double deg_to_rad(double deg) { return deg * (pi / 180.0); }
inline constexpr double rad_to_deg(double rad) { return rad * (180.0 / pi); }

// Power ratio <-> decibels. to_db(0) is -inf.
inline double to_db(double ratio) { return 10.0 * std::log10(ratio); }
inline double from_db(double db) { return std::pow(10.0, 0.1 * db); }

// Carrier wavelength in meters. Throws DomainError for frequency <= 0.
double wavelength(double frequency_hz);

class CarrierSpec
{
public:
    explicit CarrierSpec(double frequency_hz = 28.0e9);

    double frequency_hz() const { return frequency_hz_; }
    double wavelength_m() const { return wavelength_m_; }
    double wavenumber() const { return two_pi / wavelength_m_; } // rad/m

private:
    double frequency_hz_;
    double wavelength_m_;
};

// Clutter surface material. Metal reflects fully, dielectrics are reduced to an
// incidence-averaged Fresnel power reflectivity, Explicit is taken verbatim.
struct Metal
{
    bool operator==(const Metal &) const = default;
};
struct Dielectric
{
    double eps_r = 3.0;
    bool operator==(const Dielectric &) const = default;
};
struct ExplicitReflectivity
{
    double gamma_sq = 1.0;
    bool operator==(const ExplicitReflectivity &) const = default;
};
using SurfaceClass = std::variant<Metal, Dielectric, ExplicitReflectivity>;

// Power reflectivity |Gamma_wall|^2 of a surface class
double power_reflectivity(const SurfaceClass &surface);

std::string describe(const SurfaceClass &surface);

struct RoomSpec
{
    std::string label = "room";
    double width_m = 3.0;
    double length_m = 3.0;
    std::optional<double> d_s_m;  // distance to nearest illuminated wall
    SurfaceClass surface = Metal{};
    double t_rev_s = 1.0e-8;      // reverberation time

    // Throws DomainError on non-positive dimensions, d_s or t_rev
    void validate() const;

    // Explicit d_s, or half the smaller room dimension
    double resolved_d_s() const;
};

struct PredictionRecord
{
    std::string label;
    double d_s_m = 0.0;
    double gamma_sq = 0.0;
    double p0_db = 0.0;
    std::optional<double> measured_median_db;
};

// Closed-form average clutter backscatter ratio gamma_sq * (lambda / (4 pi d_s))^2
double average_backscatter_ratio(double d_s_m, double wavelength_m, double gamma_sq);

enum class Polarization
{
    TE,         // electric field perpendicular to the plane of incidence
    TM,         // electric field in the plane of incidence
    Unpolarized // equal-weight mean of TE and TM
};

// Air-dielectric Fresnel power reflection coefficient at incidence angle theta (radians from normal)
double fresnel_power_reflectivity(double eps_r, double theta_rad, Polarization pol);

// Fresnel power reflectivity averaged over incidence angles uniformly distributed in [0, 90 deg].
// The default TE polarization matches a vertically polarized antenna illuminating vertical walls.
double fresnel_average_reflectivity(double eps_r, Polarization pol = Polarization::TE);

// Clutter power ratio by direct 2-D quadrature of the radar integral over a clutter shell at range
// d_s, with a Gaussian receive gain pattern (RMS widths in radians, unit-total-power normalized)
// and a constant transmit gain g_t. Independent check of average_backscatter_ratio.
// Throws NumericalError if refinement does not reach 0.1% relative change.
double clutter_integral_quadrature(double d_s_m, double wavelength_m, double gamma_sq, double phi_rms_rad,
                                   double theta_rms_rad, double g_t);

// Average backscatter prediction for a room: resolves d_s and reflectivity, reports dB
PredictionRecord predict_room(const RoomSpec &room, const CarrierSpec &carrier);

// HPBW <-> RMS width of a Gaussian power pattern
inline double hpbw_to_rms(double hpbw) { return hpbw / (2.0 * std::sqrt(2.0 * std::numbers::ln2)); }
inline double rms_to_hpbw(double rms) { return rms * (2.0 * std::sqrt(2.0 * std::numbers::ln2)); }

} // namespace backscatter

#endif
