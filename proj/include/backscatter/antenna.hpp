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

#ifndef BACKSCATTER_ANTENNA_HPP
#define BACKSCATTER_ANTENNA_HPP

#include "backscatter/random_fields.hpp"

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace backscatter
{

struct GaussianHorn
{
    double hpbw_deg = 10.0;
};

struct Omni
{
};

// Gain samples in dB at strictly increasing azimuths in [0, 360). Interpolated linearly in dB.
struct Tabulated
{
    std::vector<double> azimuth_deg;
    std::vector<double> gain_db;
    std::string source;
    double elevation_gain = 1.0; // directivity contributed by the (unmodelled) elevation cut
};

using PatternKind = std::variant<GaussianHorn, Omni, Tabulated>;

std::string describe(const PatternKind &kind);

// Azimuth field pattern |f(phi)| on a grid, normalized so that sum |f|^2 dphi = 1 (dphi in radians).
// Power gain G(phi) = 2 pi |f(phi)|^2 * elevation_gain, so an omni pattern has unit gain and a
// Gaussian horn has peak gain 2 / (phi_rms * theta_rms) with a rotationally symmetric beam.
class AntennaPattern
{
public:
    AntennaPattern(AzimuthGrid grid, std::vector<double> field, PatternKind kind, double elevation_gain);

    const AzimuthGrid &grid() const { return grid_; }
    std::span<const double> field() const { return field_; }
    const PatternKind &kind() const { return kind_; }
    double elevation_gain() const { return elevation_gain_; }

    // |f| at an azimuth offset from boresight (degrees), circular linear interpolation
    double field_at(double offset_deg) const;
    double gain_at(double offset_deg) const;
    double directivity() const;

    // f(phi_i - pointing_deg) for every bin phi_i of `target`
    std::vector<double> sample_on(const AzimuthGrid &target, double pointing_deg) const;

private:
    AzimuthGrid grid_;
    std::vector<double> field_;
    PatternKind kind_;
    double elevation_gain_;
};

// Throws DomainError for hpbw outside (0, 180) deg or malformed tabulated samples
AntennaPattern make_pattern(const PatternKind &kind, const AzimuthGrid &grid);

// Rescale raw field samples so the discrete unit-total-power sum equals 1.
// Throws DomainError for negative, non-finite or all-zero samples.
AntennaPattern normalize_pattern(std::span<const double> raw_field, const AzimuthGrid &grid,
                                 PatternKind kind = Tabulated{{}, {}, "raw", 1.0}, double elevation_gain = 1.0);

// Tabulated pattern from CSV text with header `azimuth_deg,gain_db`
Tabulated parse_tabulated_csv(const std::string &text, const std::string &source);
Tabulated load_tabulated_csv(const std::string &path);

// Circular autocorrelation of the mean-removed, variance-normalized power pattern |f|^2, indexed by
// lag in grid bins. Throws NumericalError for a constant pattern.
std::vector<double> pattern_autocorrelation(const AntennaPattern &pattern);

} // namespace backscatter

#endif
