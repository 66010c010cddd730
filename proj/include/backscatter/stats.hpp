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

#ifndef BACKSCATTER_STATS_HPP
#define BACKSCATTER_STATS_HPP

#include "backscatter/clutter.hpp"
#include "backscatter/model.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace backscatter
{

// Right-continuous empirical distribution F(x) = #{s <= x} / n
struct EmpiricalCdf
{
    std::vector<double> support;    // sorted distinct sample values
    std::vector<double> cumulative; // F at each support point

    double operator()(double x) const;
    double quantile(double p) const; // smallest support value with F >= p, p in (0, 1]
};

// Throws DomainError on empty input
EmpiricalCdf empirical_cdf(std::span<const double> samples);

// Mean-removed, variance-normalized correlation of two equal-length dB spectra
double spectrum_correlation(std::span<const double> a_db, std::span<const double> b_db);

struct CorrelationCurve
{
    std::vector<double> separation_m;
    std::vector<double> correlation;
    std::vector<std::size_t> pairs; // pairs averaged in each bucket
};

// Pairwise correlation of dB spectra, averaged within separation buckets of width bucket_m.
// Throws DomainError on fewer than two spectra or mismatched lengths, NumericalError on constant spectra.
CorrelationCurve spatial_correlation(std::span<const std::vector<double>> spectra_db,
                                     std::span<const Position2> positions, double bucket_m = 1e-3);
CorrelationCurve spatial_correlation(std::span<const SpunSpectrum> spectra, std::span<const Position2> positions,
                                     double bucket_m = 1e-3);

// Circular autocorrelation of a dB spectrum vs pointing lag; the list form averages over spectra
std::vector<double> azimuth_autocorrelation(std::span<const double> spectrum_db);
std::vector<double> azimuth_autocorrelation(const SpunSpectrum &spectrum);
std::vector<double> azimuth_autocorrelation(std::span<const SpunSpectrum> spectra);

// Lag (in units of spacing) where a decreasing correlation curve first crosses `level`,
// linearly interpolated. Throws NumericalError if it never does within half the curve.
double main_lobe_half_width(std::span<const double> curve, double spacing, double level = 0.5);

struct ReverberationFit
{
    double t_rev_s = 0.0;
    double slope_db_per_s = 0.0;
    double intercept_db = 0.0;
    std::size_t points = 0;
};

// Least-squares line through the dB profile from its peak (at or after onset) down to 30 dB below
// the peak. Throws FitError with fewer than 10 usable samples or a non-decaying slope.
ReverberationFit fit_reverberation(std::span<const double> delay_s, std::span<const double> power, double onset_s);

struct KsResult
{
    double statistic = 0.0;
    double p_value = 0.0;
    std::size_t n = 0;
};

// One-sample Kolmogorov-Smirnov test against Exponential(rate), asymptotic p-value
KsResult ks_test_exponential(std::span<const double> samples, double rate = 1.0);

// Kolmogorov survival function Q(lambda) = 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2)
double kolmogorov_survival(double lambda);

// One measured room: link count, size, wall distance and median backscatter ratio. material = nullopt selects the better of metal
// (gamma^2 = 1) and gamma^2 = 0.25 for that row.
struct MeasuredRoom
{
    std::string label;
    int n_links = 0;
    double dim_a_m = 0.0;
    double dim_b_m = 0.0;
    double d_s_m = 0.0;
    double measured_median_db = 0.0; // NaN when unknown
    std::optional<SurfaceClass> material;
};

// Material tokens: best_fit | metal | dielectric:<eps_r> | explicit:<gamma_sq>
std::optional<SurfaceClass> parse_material(const std::string &token);
std::string material_token(const std::optional<SurfaceClass> &material);

std::vector<MeasuredRoom> parse_rooms_csv(const std::string &text, const std::string &source);
std::vector<MeasuredRoom> load_rooms_csv(const std::string &path);

// The 14 rooms shipped in data/measured_rooms.csv, compiled in
const std::vector<MeasuredRoom> &reference_rooms();

struct RoomPrediction
{
    MeasuredRoom row;
    double gamma_sq = 0.0;
    double prediction_db = 0.0;
    double error_db = 0.0; // prediction - measured
};

struct RoomReport
{
    std::vector<RoomPrediction> entries;
    double rms_db = 0.0; // over rows with a measured median
};

// Throws DomainError on an empty row list
RoomReport room_report(std::span<const MeasuredRoom> rows, const CarrierSpec &carrier);

} // namespace backscatter

#endif
