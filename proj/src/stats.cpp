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

#include "backscatter/stats.hpp"
#include "backscatter/errors.hpp"
#include "backscatter/series.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

namespace backscatter
{

namespace
{

constexpr double fit_floor_db = 30.0;
constexpr std::size_t fit_min_points = 10;

std::vector<double> spectrum_db(const SpunSpectrum &s)
{
    std::vector<double> db = s.power_db();
    for (double v : db)
        if (!std::isfinite(v))
            throw NumericalError("Spectrum contains zero or non-finite power.");
    return db;
}

// One CSV record; double-quoted cells may hold commas and "" escapes
std::vector<std::string> split_csv(const std::string &line, const std::string &where)
{
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        const char c = line[i];
        if (quoted)
        {
            if (c != '"')
                cell += c;
            else if (i + 1 < line.size() && line[i + 1] == '"')
                cell += line[++i];
            else
                quoted = false;
        }
        else if (c == '"' && cell.empty())
            quoted = true;
        else if (c == ',')
            out.push_back(std::exchange(cell, {}));
        else
            cell += c;
    }
    if (quoted)
        throw DomainError(where + ": unterminated quoted cell.");
    out.push_back(cell);
    return out;
}

double parse_number(const std::string &s, const std::string &where)
{
    try
    {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    }
    catch (const std::logic_error &)
    {
        throw DomainError(where + ": malformed number '" + s + "'.");
    }
}

} // namespace

double EmpiricalCdf::operator()(double x) const
{
    auto it = std::upper_bound(support.begin(), support.end(), x);
    if (it == support.begin())
        return 0.0;
    return cumulative[static_cast<std::size_t>(it - support.begin()) - 1];
}

double EmpiricalCdf::quantile(double p) const
{
    if (!(p > 0.0 && p <= 1.0))
        throw DomainError("Quantile level must lie in (0, 1].");
    auto it = std::lower_bound(cumulative.begin(), cumulative.end(), p - 1e-12);
    if (it == cumulative.end())
        return support.back();
    return support[static_cast<std::size_t>(it - cumulative.begin())];
}

EmpiricalCdf empirical_cdf(std::span<const double> samples)
{
    if (samples.empty())
        throw DomainError("Empirical CDF of an empty sample.");
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());
    EmpiricalCdf cdf;
    const double n = static_cast<double>(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        if (i + 1 < s.size() && s[i + 1] == s[i])
            continue;
        cdf.support.push_back(s[i]);
        cdf.cumulative.push_back(static_cast<double>(i + 1) / n);
    }
    return cdf;
}

double spectrum_correlation(std::span<const double> a_db, std::span<const double> b_db)
{
    if (a_db.size() != b_db.size() || a_db.empty())
        throw DomainError("Spectra must be non-empty and of equal length.");
    const std::vector<double> a = standardize(a_db);
    const std::vector<double> b = standardize(b_db);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * b[i];
    return std::clamp(acc / static_cast<double>(a.size()), -1.0, 1.0);
}

CorrelationCurve spatial_correlation(std::span<const std::vector<double>> spectra_db,
                                     std::span<const Position2> positions, double bucket_m)
{
    if (spectra_db.size() < 2)
        throw DomainError("Spatial correlation needs at least two spectra.");
    if (positions.size() != spectra_db.size())
        throw DomainError("One position per spectrum is required.");
    if (!(bucket_m > 0.0))
        throw DomainError("Separation bucket width must be positive.");

    std::vector<std::vector<double>> z;
    z.reserve(spectra_db.size());
    for (const auto &s : spectra_db)
    {
        if (s.size() != spectra_db.front().size())
            throw DomainError("Spectra must share one pointing grid.");
        z.push_back(standardize(s));
    }

    std::map<long long, std::pair<double, std::size_t>> buckets;
    const double n = static_cast<double>(z.front().size());
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j)
        {
            double acc = 0.0;
            for (std::size_t k = 0; k < z[i].size(); ++k)
                acc += z[i][k] * z[j][k];
            const double sep = std::hypot(positions[j].x_m - positions[i].x_m, positions[j].y_m - positions[i].y_m);
            auto &b = buckets[std::llround(sep / bucket_m)];
            b.first += std::clamp(acc / n, -1.0, 1.0);
            ++b.second;
        }

    CorrelationCurve out;
    for (const auto &[key, b] : buckets)
    {
        out.separation_m.push_back(static_cast<double>(key) * bucket_m);
        out.correlation.push_back(b.first / static_cast<double>(b.second));
        out.pairs.push_back(b.second);
    }
    return out;
}

CorrelationCurve spatial_correlation(std::span<const SpunSpectrum> spectra, std::span<const Position2> positions,
                                     double bucket_m)
{
    std::vector<std::vector<double>> db;
    db.reserve(spectra.size());
    for (const auto &s : spectra)
    {
        if (s.pointing_deg != spectra.front().pointing_deg)
            throw DomainError("Spectra must share one pointing grid.");
        db.push_back(spectrum_db(s));
    }
    return spatial_correlation(db, positions, bucket_m);
}

std::vector<double> azimuth_autocorrelation(std::span<const double> spectrum_db)
{
    return circular_autocorrelation(spectrum_db);
}

std::vector<double> azimuth_autocorrelation(const SpunSpectrum &spectrum)
{
    return circular_autocorrelation(spectrum_db(spectrum));
}

std::vector<double> azimuth_autocorrelation(std::span<const SpunSpectrum> spectra)
{
    if (spectra.empty())
        throw DomainError("Autocorrelation needs at least one spectrum.");
    std::vector<double> acc;
    for (const auto &s : spectra)
    {
        if (s.power.size() != spectra.front().power.size())
            throw DomainError("Spectra must share one pointing grid.");
        const std::vector<double> r = azimuth_autocorrelation(s);
        if (acc.empty())
            acc.assign(r.size(), 0.0);
        for (std::size_t i = 0; i < r.size(); ++i)
            acc[i] += r[i];
    }
    for (double &v : acc)
        v /= static_cast<double>(spectra.size());
    return acc;
}

double main_lobe_half_width(std::span<const double> curve, double spacing, double level)
{
    for (std::size_t i = 1; i <= curve.size() / 2; ++i)
        if (curve[i] < level)
        {
            const double w = (curve[i - 1] - level) / (curve[i - 1] - curve[i]);
            return (static_cast<double>(i - 1) + w) * spacing;
        }
    throw NumericalError("Correlation curve does not fall below the requested level.");
}

ReverberationFit fit_reverberation(std::span<const double> delay_s, std::span<const double> power, double onset_s)
{
    if (delay_s.size() != power.size())
        throw DomainError("Delay and power profiles differ in length.");

    std::size_t start = 0;
    while (start < delay_s.size() && delay_s[start] < onset_s)
        ++start;
    if (start == delay_s.size())
        throw FitError("Profile has no samples beyond the onset.");

    std::size_t peak = start;
    for (std::size_t i = start; i < power.size(); ++i)
        if (power[i] > power[peak])
            peak = i;
    if (!(power[peak] > 0.0) || !std::isfinite(power[peak]))
        throw FitError("Profile carries no power beyond the onset.");

    const double floor_db = to_db(power[peak]) - fit_floor_db;
    std::vector<double> t, y;
    for (std::size_t i = peak; i < power.size(); ++i)
    {
        const double db = to_db(power[i]);
        if (!(db >= floor_db) || !std::isfinite(db))
            break;
        t.push_back(delay_s[i]);
        y.push_back(db);
    }
    if (t.size() < fit_min_points)
        throw FitError("Fewer than 10 profile samples above the fit floor.");

    const double tm = mean(t);
    const double ym = mean(y);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i)
    {
        sxy += (t[i] - tm) * (y[i] - ym);
        sxx += (t[i] - tm) * (t[i] - tm);
    }
    const double slope = sxy / sxx;
    if (!(slope < 0.0))
        throw FitError("Profile does not decay.");

    ReverberationFit fit;
    fit.slope_db_per_s = slope;
    fit.intercept_db = ym - slope * tm;
    fit.t_rev_s = -10.0 * std::numbers::log10e / slope;
    fit.points = t.size();
    return fit;
}

double kolmogorov_survival(double lambda)
{
    if (!(lambda > 0.0))
        return 1.0;
    if (lambda < 1.18)
    {
        // Theta-function form converges fast for small lambda
        const double c = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
        double s = 0.0;
        for (int k = 1; k <= 50; ++k)
        {
            const double m = 2.0 * k - 1.0;
            s += std::exp(-m * m * c);
        }
        return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * s, 0.0, 1.0);
    }
    double s = 0.0;
    for (int k = 1; k <= 100; ++k)
    {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        s += (k % 2 == 1 ? term : -term);
        if (term < 1e-18)
            break;
    }
    return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_test_exponential(std::span<const double> samples, double rate)
{
    if (samples.empty())
        throw DomainError("Goodness-of-fit test needs samples.");
    if (!(rate > 0.0))
        throw DomainError("Exponential rate must be positive.");
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        const double f = s[i] <= 0.0 ? 0.0 : -std::expm1(-rate * s[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    const double rn = std::sqrt(n);
    KsResult r;
    r.statistic = d;
    r.n = s.size();
    r.p_value = kolmogorov_survival((rn + 0.12 + 0.11 / rn) * d);
    return r;
}

std::optional<SurfaceClass> parse_material(const std::string &token)
{
    if (token == "best_fit")
        return std::nullopt;
    if (token == "metal")
        return Metal{};
    const auto colon = token.find(':');
    if (colon != std::string::npos)
    {
        const std::string kind = token.substr(0, colon);
        const double v = parse_number(token.substr(colon + 1), "material");
        if (kind == "dielectric")
        {
            if (!(v >= 1.0))
                throw DomainError("Dielectric constant must be at least 1.");
            return Dielectric{v};
        }
        if (kind == "explicit")
        {
            if (!(v >= 0.0 && v <= 1.0))
                throw DomainError("Explicit reflectivity must lie in [0, 1].");
            return ExplicitReflectivity{v};
        }
    }
    throw DomainError("Unknown material '" + token + "' (best_fit, metal, dielectric:<eps>, explicit:<g>).");
}

std::string material_token(const std::optional<SurfaceClass> &material)
{
    if (!material)
        return "best_fit";
    std::ostringstream os;
    os.precision(17);
    if (std::holds_alternative<Metal>(*material))
        return "metal";
    if (const auto *d = std::get_if<Dielectric>(&*material))
        os << "dielectric:" << d->eps_r;
    else
        os << "explicit:" << std::get<ExplicitReflectivity>(*material).gamma_sq;
    return os.str();
}

std::vector<MeasuredRoom> parse_rooms_csv(const std::string &text, const std::string &source)
{
    static const std::string header = "label,n_links,dim_a_m,dim_b_m,d_s_m,measured_median_db,material";
    std::istringstream in(text);
    std::string line;
    std::vector<MeasuredRoom> rows;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#')
            continue;
        const std::string where = source + ":" + std::to_string(line_no);
        if (!header_seen)
        {
            if (line != header)
                throw DomainError(where + ": expected header '" + header + "'.");
            header_seen = true;
            continue;
        }
        const auto cells = split_csv(line, where);
        if (cells.size() != 7)
            throw DomainError(where + ": expected 7 columns, found " + std::to_string(cells.size()) + ".");
        MeasuredRoom r;
        r.label = cells[0];
        const double links = parse_number(cells[1], where);
        if (!(links >= 0.0) || links != std::floor(links))
            throw DomainError(where + ": link count must be a non-negative integer.");
        r.n_links = static_cast<int>(links);
        r.dim_a_m = parse_number(cells[2], where);
        r.dim_b_m = parse_number(cells[3], where);
        r.d_s_m = parse_number(cells[4], where);
        r.measured_median_db = parse_number(cells[5], where);
        if (!(r.d_s_m > 0.0) || !(r.dim_a_m > 0.0) || !(r.dim_b_m > 0.0))
            throw DomainError(where + ": dimensions and d_s must be positive.");
        try
        {
            r.material = parse_material(cells[6]);
        }
        catch (const DomainError &e)
        {
            throw DomainError(where + ": " + e.what());
        }
        rows.push_back(std::move(r));
    }
    if (!header_seen)
        throw DomainError(source + ": empty room table.");
    return rows;
}

std::vector<MeasuredRoom> load_rooms_csv(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw DomainError("Cannot open room table '" + path + "'.");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_rooms_csv(ss.str(), path);
}

const std::vector<MeasuredRoom> &reference_rooms()
{
    static const std::vector<MeasuredRoom> rooms = {
        {"8 offices, metal furniture", 16, 3.0, 3.0, 1.5, -66.7, std::nullopt},
        {"7 Labs, metal furniture", 33, 20.0, 6.0, 3.0, -72.1, std::nullopt},
        {"Cafeteria", 13, 30.0, 20.0, 10.0, -78.6, std::nullopt},
        {"Lobby", 12, 30.0, 20.0, 5.0, -72.1, std::nullopt},
        {"Game room", 11, 25.0, 15.0, 4.0, -73.7, std::nullopt},
        {"Conference Room", 26, 7.0, 5.0, 2.5, -72.6, std::nullopt},
        {"Gym", 17, 30.0, 17.0, 9.0, -78.7, std::nullopt},
        {"Lab 1", 15, 15.0, 5.0, 2.5, -71.1, std::nullopt},
        {"Lab 2", 10, 15.0, 5.0, 2.5, -71.1, std::nullopt},
        {"Office 1", 22, 3.5, 2.7, 1.0, -69.3, std::nullopt},
        {"Office 2", 17, 4.0, 3.0, 1.5, -71.8, std::nullopt},
        {"Study hall", 22, 15.0, 9.0, 4.5, -71.7, std::nullopt},
        {"Café", 15, 14.0, 10.0, 3.0, -71.4, std::nullopt},
        {"Carleton Hall", 22, 25.0, 12.0, 3.0, -74.8, std::nullopt},
    };
    return rooms;
}

RoomReport room_report(std::span<const MeasuredRoom> rows, const CarrierSpec &carrier)
{
    if (rows.empty())
        throw DomainError("Room report needs at least one row.");
    RoomReport report;
    double sq = 0.0;
    std::size_t measured = 0;
    for (const auto &row : rows)
    {
        if (!(row.d_s_m > 0.0))
            throw DomainError("Row '" + row.label + "' has a non-positive d_s.");
        RoomPrediction e;
        e.row = row;
        if (row.material)
        {
            e.gamma_sq = power_reflectivity(*row.material);
            e.prediction_db = to_db(average_backscatter_ratio(row.d_s_m, carrier.wavelength_m(), e.gamma_sq));
        }
        else
        {
            if (!std::isfinite(row.measured_median_db))
                throw DomainError("Row '" + row.label + "' needs a measured median to pick the best-fit material.");
            for (double g : {1.0, 0.25})
            {
                const double p = to_db(average_backscatter_ratio(row.d_s_m, carrier.wavelength_m(), g));
                if (e.gamma_sq == 0.0 ||
                    std::abs(p - row.measured_median_db) < std::abs(e.prediction_db - row.measured_median_db))
                {
                    e.gamma_sq = g;
                    e.prediction_db = p;
                }
            }
        }
        e.error_db = e.prediction_db - row.measured_median_db;
        if (std::isfinite(e.error_db))
        {
            sq += e.error_db * e.error_db;
            ++measured;
        }
        report.entries.push_back(std::move(e));
    }
    report.rms_db = measured ? std::sqrt(sq / static_cast<double>(measured)) : std::numeric_limits<double>::quiet_NaN();
    return report;
}

} // namespace backscatter
