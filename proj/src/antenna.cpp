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

#include "backscatter/antenna.hpp"
#include "backscatter/errors.hpp"
#include "backscatter/model.hpp"
#include "backscatter/series.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace backscatter
{

namespace
{

// Fractional bin position wrapped to [0, n); snaps to the nearest integer when within rounding noise
double wrap_position(double pos, std::size_t n)
{
    const double nd = static_cast<double>(n);
    pos = std::fmod(pos, nd);
    if (pos < 0.0)
        pos += nd;
    const double r = std::round(pos);
    if (std::abs(pos - r) < 1e-9)
        pos = r;
    if (pos >= nd)
        pos -= nd;
    return pos;
}

double interpolate_circular(std::span<const double> v, double pos)
{
    const std::size_t n = v.size();
    pos = wrap_position(pos, n);
    const auto i0 = static_cast<std::size_t>(pos);
    const double w = pos - static_cast<double>(i0);
    if (w == 0.0)
        return v[i0];
    const std::size_t i1 = (i0 + 1 == n) ? 0 : i0 + 1;
    return (1.0 - w) * v[i0] + w * v[i1];
}

void check_tabulated(const Tabulated &t)
{
    if (t.azimuth_deg.empty() || t.azimuth_deg.size() != t.gain_db.size())
        throw DomainError("Tabulated pattern needs matching, non-empty azimuth and gain columns.");
    for (std::size_t i = 0; i < t.azimuth_deg.size(); ++i)
    {
        const double a = t.azimuth_deg[i];
        if (!(a >= 0.0 && a < 360.0))
            throw DomainError("Tabulated azimuths must lie in [0, 360).");
        if (i > 0 && !(a > t.azimuth_deg[i - 1]))
            throw DomainError("Tabulated azimuths must be strictly increasing.");
        if (!std::isfinite(t.gain_db[i]))
            throw DomainError("Tabulated gains must be finite dB values.");
    }
    if (!(t.elevation_gain > 0.0))
        throw DomainError("Elevation gain factor must be positive.");
}

// Linear-in-dB interpolation of the table at azimuth a (deg), wrapping through 360
double tabulated_gain_db(const Tabulated &t, double a)
{
    const auto &az = t.azimuth_deg;
    const auto &g = t.gain_db;
    const std::size_t n = az.size();
    if (n == 1)
        return g[0];
    auto it = std::upper_bound(az.begin(), az.end(), a);
    std::size_t hi = static_cast<std::size_t>(it - az.begin());
    double a_lo, a_hi, g_lo, g_hi;
    if (hi == 0 || hi == n)
    {
        // Wrap segment between the last and first samples
        a_lo = az[n - 1];
        g_lo = g[n - 1];
        a_hi = az[0] + 360.0;
        g_hi = g[0];
        if (hi == 0)
            a += 360.0;
    }
    else
    {
        a_lo = az[hi - 1];
        g_lo = g[hi - 1];
        a_hi = az[hi];
        g_hi = g[hi];
    }
    const double w = (a - a_lo) / (a_hi - a_lo);
    return (1.0 - w) * g_lo + w * g_hi;
}

} // namespace

std::string describe(const PatternKind &kind)
{
    std::ostringstream os;
    if (const auto *h = std::get_if<GaussianHorn>(&kind))
        os << "gaussian_horn(hpbw=" << h->hpbw_deg << " deg)";
    else if (std::holds_alternative<Omni>(kind))
        os << "omni";
    else
        os << "tabulated(" << std::get<Tabulated>(kind).source << ")";
    return os.str();
}

AntennaPattern::AntennaPattern(AzimuthGrid grid, std::vector<double> field, PatternKind kind, double elevation_gain)
    : grid_(grid), field_(std::move(field)), kind_(std::move(kind)), elevation_gain_(elevation_gain)
{
    if (field_.size() != grid_.size())
        throw ConfigurationError("Pattern sample count does not match its grid.");
}

double AntennaPattern::field_at(double offset_deg) const
{
    return interpolate_circular(field_, offset_deg / grid_.delta_phi_deg());
}

double AntennaPattern::gain_at(double offset_deg) const
{
    const double f = field_at(offset_deg);
    return two_pi * f * f * elevation_gain_;
}

double AntennaPattern::directivity() const
{
    const double fmax = *std::max_element(field_.begin(), field_.end());
    return two_pi * fmax * fmax * elevation_gain_;
}

std::vector<double> AntennaPattern::sample_on(const AzimuthGrid &target, double pointing_deg) const
{
    std::vector<double> out(target.size());
    const double ratio = target.delta_phi_deg() / grid_.delta_phi_deg();
    const double shift = pointing_deg / grid_.delta_phi_deg();
    for (std::size_t i = 0; i < target.size(); ++i)
        out[i] = interpolate_circular(field_, static_cast<double>(i) * ratio - shift);
    return out;
}

AntennaPattern normalize_pattern(std::span<const double> raw_field, const AzimuthGrid &grid, PatternKind kind,
                                 double elevation_gain)
{
    if (raw_field.size() != grid.size())
        throw ConfigurationError("Pattern sample count does not match its grid.");
    double power = 0.0;
    for (double f : raw_field)
    {
        if (!(f >= 0.0) || !std::isfinite(f))
            throw DomainError("Field pattern samples must be finite and non-negative.");
        power += f * f;
    }
    if (power == 0.0)
        throw DomainError("Cannot normalize an all-zero pattern.");
    const double scale = 1.0 / std::sqrt(power * grid.delta_phi_rad());
    std::vector<double> field(raw_field.begin(), raw_field.end());
    for (double &f : field)
        f *= scale;
    return AntennaPattern(grid, std::move(field), std::move(kind), elevation_gain);
}

AntennaPattern make_pattern(const PatternKind &kind, const AzimuthGrid &grid)
{
    const std::size_t n = grid.size();
    std::vector<double> raw(n);

    if (const auto *horn = std::get_if<GaussianHorn>(&kind))
    {
        if (!(horn->hpbw_deg > 0.0 && horn->hpbw_deg < 180.0))
            throw DomainError("Gaussian horn HPBW must lie in (0, 180) deg.");
        const double rms_deg = hpbw_to_rms(horn->hpbw_deg);
        for (std::size_t i = 0; i < n; ++i)
        {
            const double off = grid.signed_offset_deg(i);
            // |f|^2 is Gaussian with RMS rms_deg, so |f| has twice the variance
            raw[i] = std::exp(-off * off / (4.0 * rms_deg * rms_deg));
        }
        // Rotationally symmetric beam: elevation RMS width equals the azimuth one
        const double theta_rms_rad = deg_to_rad(rms_deg);
        const double elevation_gain = std::sqrt(2.0 / pi) / theta_rms_rad;
        return normalize_pattern(raw, grid, kind, elevation_gain);
    }
    if (std::holds_alternative<Omni>(kind))
    {
        std::fill(raw.begin(), raw.end(), 1.0);
        return normalize_pattern(raw, grid, kind, 1.0);
    }

    const auto &tab = std::get<Tabulated>(kind);
    check_tabulated(tab);
    for (std::size_t i = 0; i < n; ++i)
        raw[i] = std::sqrt(from_db(tabulated_gain_db(tab, grid.angle_deg(i))));
    return normalize_pattern(raw, grid, kind, tab.elevation_gain);
}

Tabulated parse_tabulated_csv(const std::string &text, const std::string &source)
{
    std::istringstream in(text);
    std::string line;
    Tabulated t;
    t.source = source;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (!header_seen)
        {
            if (line != "azimuth_deg,gain_db")
                throw DomainError(source + ":" + std::to_string(line_no) +
                                  ": expected header 'azimuth_deg,gain_db'.");
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw DomainError(source + ":" + std::to_string(line_no) + ": expected two columns.");
        try
        {
            std::size_t pos = 0;
            const double a = std::stod(line.substr(0, comma), &pos);
            const double g = std::stod(line.substr(comma + 1));
            t.azimuth_deg.push_back(a);
            t.gain_db.push_back(g);
        }
        catch (const std::logic_error &)
        {
            throw DomainError(source + ":" + std::to_string(line_no) + ": malformed number.");
        }
    }
    if (!header_seen)
        throw DomainError(source + ": empty pattern file.");
    check_tabulated(t);
    return t;
}

Tabulated load_tabulated_csv(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw DomainError("Cannot open pattern file '" + path + "'.");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_tabulated_csv(ss.str(), path);
}

std::vector<double> pattern_autocorrelation(const AntennaPattern &pattern)
{
    std::vector<double> power(pattern.field().begin(), pattern.field().end());
    for (double &p : power)
        p *= p;
    return circular_autocorrelation(power);
}

} // namespace backscatter
