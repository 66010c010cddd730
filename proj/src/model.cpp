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

#include "backscatter/model.hpp"
#include "backscatter/errors.hpp"

#include <algorithm>
#include <sstream>

namespace backscatter
{

double wavelength(double frequency_hz)
{
    if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
        throw DomainError("Carrier frequency must be positive and finite.");
    return speed_of_light / frequency_hz;
}

CarrierSpec::CarrierSpec(double frequency_hz)
    : frequency_hz_(frequency_hz), wavelength_m_(wavelength(frequency_hz))
{
}

double power_reflectivity(const SurfaceClass &surface)
{
    struct Visitor
    {
        double operator()(const Metal &) const { return 1.0; }
        double operator()(const Dielectric &d) const { return fresnel_average_reflectivity(d.eps_r); }
        double operator()(const ExplicitReflectivity &e) const
        {
            if (!(e.gamma_sq >= 0.0 && e.gamma_sq <= 1.0))
                throw DomainError("Explicit power reflectivity must lie in [0, 1].");
            return e.gamma_sq;
        }
    };
    return std::visit(Visitor{}, surface);
}

std::string describe(const SurfaceClass &surface)
{
    std::ostringstream os;
    if (std::holds_alternative<Metal>(surface))
        os << "metal";
    else if (const auto *d = std::get_if<Dielectric>(&surface))
        os << "dielectric:" << d->eps_r;
    else
        os << "explicit:" << std::get<ExplicitReflectivity>(surface).gamma_sq;
    return os.str();
}

void RoomSpec::validate() const
{
    if (!(width_m > 0.0) || !(length_m > 0.0))
        throw DomainError("Room '" + label + "': width and length must be positive.");
    if (d_s_m && !(*d_s_m > 0.0))
        throw DomainError("Room '" + label + "': d_s must be positive.");
    if (!(t_rev_s > 0.0))
        throw DomainError("Room '" + label + "': reverberation time must be positive.");
}

double RoomSpec::resolved_d_s() const
{
    return d_s_m ? *d_s_m : 0.5 * std::min(width_m, length_m);
}

double average_backscatter_ratio(double d_s_m, double wavelength_m, double gamma_sq)
{
    if (!(d_s_m > 0.0))
        throw DomainError("d_s must be positive.");
    if (!(wavelength_m > 0.0))
        throw DomainError("Wavelength must be positive.");
    if (!(gamma_sq >= 0.0 && gamma_sq <= 1.0))
        throw DomainError("Power reflectivity must lie in [0, 1].");
    const double a = wavelength_m / (4.0 * pi * d_s_m);
    return gamma_sq * a * a;
}

double fresnel_power_reflectivity(double eps_r, double theta_rad, Polarization pol)
{
    if (!(eps_r >= 1.0))
        throw DomainError("Relative permittivity must be >= 1.");
    // No index contrast, no interface (avoids 0/0 at grazing incidence)
    if (eps_r == 1.0)
        return 0.0;
    const double c = std::cos(theta_rad);
    const double s = std::sin(theta_rad);
    const double root = std::sqrt(eps_r - s * s);

    const double r_te = (c - root) / (c + root);
    const double r_tm = (eps_r * c - root) / (eps_r * c + root);
    switch (pol)
    {
    case Polarization::TE:
        return r_te * r_te;
    case Polarization::TM:
        return r_tm * r_tm;
    case Polarization::Unpolarized:
        break;
    }
    return 0.5 * (r_te * r_te + r_tm * r_tm);
}

double fresnel_average_reflectivity(double eps_r, Polarization pol)
{
    if (!(eps_r >= 1.0))
        throw DomainError("Relative permittivity must be >= 1.");

    // Composite Simpson over [0, pi/2], refined until the mean settles
    const double a = 0.0, b = 0.5 * pi;
    auto simpson = [&](int n)
    {
        const double h = (b - a) / n;
        double sum = fresnel_power_reflectivity(eps_r, a, pol) + fresnel_power_reflectivity(eps_r, b, pol);
        for (int i = 1; i < n; ++i)
            sum += (i % 2 ? 4.0 : 2.0) * fresnel_power_reflectivity(eps_r, a + i * h, pol);
        return sum * h / 3.0 / (b - a);
    };

    double prev = simpson(64);
    for (int n = 128; n <= (1 << 20); n *= 2)
    {
        const double cur = simpson(n);
        if (std::abs(cur - prev) <= 1e-12 + 1e-10 * std::abs(cur))
            return std::clamp(cur, 0.0, 1.0);
        prev = cur;
    }
    throw NumericalError("Fresnel average did not converge.");
}

double clutter_integral_quadrature(double d_s_m, double wavelength_m, double gamma_sq, double phi_rms_rad,
                                   double theta_rms_rad, double g_t)
{
    if (!(d_s_m > 0.0) || !(wavelength_m > 0.0))
        throw DomainError("d_s and wavelength must be positive.");
    if (!(phi_rms_rad > 0.0) || !(theta_rms_rad > 0.0))
        throw DomainError("Beam RMS widths must be positive.");
    if (!(gamma_sq >= 0.0 && gamma_sq <= 1.0))
        throw DomainError("Power reflectivity must lie in [0, 1].");
    if (!(g_t >= 0.0))
        throw DomainError("Transmit gain must be non-negative.");

    const double prefactor = wavelength_m * wavelength_m * gamma_sq * g_t / std::pow(4.0 * pi, 3);
    if (prefactor == 0.0)
        return 0.0;

    // Receive gain, normalized so that its integral over the sphere of directions is ~4 pi
    const double g_peak = 2.0 / (phi_rms_rad * theta_rms_rad);
    auto receive_gain = [&](double phi, double theta)
    {
        return g_peak * std::exp(-phi * phi / (2.0 * phi_rms_rad * phi_rms_rad)) *
               std::exp(-theta * theta / (2.0 * theta_rms_rad * theta_rms_rad));
    };

    // Clutter shell at constant range d_s facing the radar: R = d_s, incidence along the surface
    // normal (cos^2 of the Lambert angle is 1), area element d_s^2 cos(theta) dtheta dphi.
    auto integrand = [&](double phi, double theta)
    {
        const double r = d_s_m;
        const double cos_omega = 1.0;
        const double area_jacobian = d_s_m * d_s_m * std::cos(theta);
        return receive_gain(phi, theta) * cos_omega * cos_omega * area_jacobian / (r * r * r * r);
    };

    auto trapezoid = [&](int n)
    {
        const double phi0 = -pi, phi1 = pi;
        const double th0 = -0.5 * pi, th1 = 0.5 * pi;
        const double hp = (phi1 - phi0) / n;
        const double ht = (th1 - th0) / n;
        double sum = 0.0;
        for (int i = 0; i <= n; ++i)
        {
            const double wi = (i == 0 || i == n) ? 0.5 : 1.0;
            const double phi = phi0 + i * hp;
            double row = 0.0;
            for (int j = 0; j <= n; ++j)
            {
                const double wj = (j == 0 || j == n) ? 0.5 : 1.0;
                row += wj * integrand(phi, th0 + j * ht);
            }
            sum += wi * row;
        }
        return sum * hp * ht;
    };

    double prev = trapezoid(32);
    for (int n = 64; n <= 4096; n *= 2)
    {
        const double cur = trapezoid(n);
        if (std::abs(cur - prev) < 1e-3 * std::abs(cur))
            return prefactor * cur;
        prev = cur;
    }
    throw NumericalError("Clutter integral quadrature did not converge to 0.1%.");
}

PredictionRecord predict_room(const RoomSpec &room, const CarrierSpec &carrier)
{
    room.validate();
    PredictionRecord rec;
    rec.label = room.label;
    rec.d_s_m = room.resolved_d_s();
    rec.gamma_sq = power_reflectivity(room.surface);
    rec.p0_db = to_db(average_backscatter_ratio(rec.d_s_m, carrier.wavelength_m(), rec.gamma_sq));
    return rec;
}

} // namespace backscatter
