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

#include "catch_amalgamated.hpp"

#include "backscatter/clutter.hpp"
#include "backscatter/errors.hpp"
#include "backscatter/model.hpp"
#include "backscatter/stats.hpp"

#include <cmath>
#include <limits>

using namespace backscatter;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Empirical CDF")
{
    const std::vector<double> x{3.0, 1.0, 2.0};
    const auto cdf = empirical_cdf(x);
    CHECK_THAT(cdf(2.0), WithinRel(2.0 / 3.0, 1e-15));
    CHECK(cdf(0.5) == 0.0);
    CHECK(cdf(3.0) == 1.0);
    CHECK(cdf.quantile(0.5) == 2.0);
    CHECK(cdf.quantile(1.0) == 3.0);

    const auto ties = empirical_cdf(std::vector<double>{1.0, 1.0, 2.0, 2.0});
    CHECK(ties.support.size() == 2);
    CHECK(ties(1.0) == 0.5);
    CHECK_THROWS_AS(empirical_cdf(std::vector<double>{}), DomainError);
    CHECK_THROWS_AS(cdf.quantile(0.0), DomainError);
}

TEST_CASE("Spectrum correlation")
{
    const std::vector<double> a{1.0, 4.0, 2.0, 8.0, 5.0};
    std::vector<double> neg(a.size()), shifted(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        neg[i] = -a[i];
        shifted[i] = 3.0 * a[i] + 7.0;
    }
    CHECK_THAT(spectrum_correlation(a, a), WithinAbs(1.0, 1e-12));
    CHECK_THAT(spectrum_correlation(a, neg), WithinAbs(-1.0, 1e-12));
    CHECK_THAT(spectrum_correlation(a, shifted), WithinAbs(1.0, 1e-12));
    CHECK_THROWS_AS(spectrum_correlation(a, std::vector<double>{1.0}), DomainError);
    CHECK_THROWS_AS(spectrum_correlation(a, std::vector<double>(5, 2.0)), NumericalError);
}

TEST_CASE("Spatial correlation buckets by separation")
{
    const std::vector<std::vector<double>> spectra{{1, 2, 3, 4}, {1, 2, 3, 4}, {4, 3, 2, 1}};
    const std::vector<Position2> pos{{0.0, 0.0}, {0.002, 0.0}, {0.004, 0.0}};
    const auto c = spatial_correlation(std::span<const std::vector<double>>(spectra), pos);
    REQUIRE(c.separation_m.size() == 2);
    CHECK_THAT(c.separation_m[0], WithinAbs(0.002, 1e-12));
    CHECK(c.pairs[0] == 2);
    CHECK_THAT(c.correlation[0], WithinAbs(0.0, 1e-12)); // +1 and -1 averaged
    CHECK_THAT(c.correlation[1], WithinAbs(-1.0, 1e-12));
    CHECK_THROWS_AS(spatial_correlation(std::span<const std::vector<double>>(spectra.data(), 1),
                                        std::span<const Position2>(pos.data(), 1)),
                    DomainError);
}

TEST_CASE("Azimuth autocorrelation and main lobe")
{
    std::vector<double> x(360);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = std::cos(2.0 * pi * static_cast<double>(i) / 360.0);
    const auto r = azimuth_autocorrelation(x);
    CHECK_THAT(r[0], WithinAbs(1.0, 1e-12));
    CHECK_THAT(r[90], WithinAbs(0.0, 1e-12));
    CHECK_THAT(main_lobe_half_width(r, 1.0), WithinAbs(60.0, 0.01));

    const std::vector<double> flat{1.0, 1.0, 0.9, 0.95};
    CHECK_THROWS_AS(main_lobe_half_width(flat, 1.0), NumericalError);

    SpunSpectrum s1, s2;
    s1.pointing_deg = s2.pointing_deg = {0.0, 90.0, 180.0, 270.0};
    s1.power = {1.0, 10.0, 100.0, 10.0};
    s2.power = {1.0, 100.0, 1.0, 100.0};
    const std::vector<SpunSpectrum> both{s1, s2};
    const auto avg = azimuth_autocorrelation(std::span<const SpunSpectrum>(both));
    const auto r1 = azimuth_autocorrelation(s1);
    const auto r2 = azimuth_autocorrelation(s2);
    for (std::size_t i = 0; i < avg.size(); ++i)
        CHECK_THAT(avg[i], WithinAbs(0.5 * (r1[i] + r2[i]), 1e-12));
}

TEST_CASE("Reverberation fit recovers an exact exponential")
{
    const double onset = 16.7e-9, t_rev = 10e-9;
    std::vector<double> tau, power;
    for (int m = 0; m < 1100; ++m)
    {
        const double t = m * 0.1e-9;
        tau.push_back(t);
        power.push_back(t < onset ? 0.0 : 3e-7 * std::exp(-(t - onset) / t_rev));
    }
    const auto fit = fit_reverberation(tau, power, onset);
    CHECK_THAT(fit.t_rev_s, WithinRel(t_rev, 1e-9));
    CHECK_THAT(fit.slope_db_per_s, WithinRel(-10.0 / std::log(10.0) / t_rev, 1e-9));
    CHECK(fit.points >= 10);
}

TEST_CASE("Reverberation fit failures")
{
    std::vector<double> tau(50), flat(50, 1e-6), short_profile(50, 0.0);
    for (std::size_t i = 0; i < tau.size(); ++i)
        tau[i] = static_cast<double>(i) * 1e-10;
    CHECK_THROWS_AS(fit_reverberation(tau, flat, 0.0), FitError);
    for (std::size_t i = 0; i < 5; ++i)
        short_profile[i] = std::pow(10.0, -static_cast<double>(i));
    CHECK_THROWS_AS(fit_reverberation(tau, short_profile, 0.0), FitError);
    CHECK_THROWS_AS(fit_reverberation(tau, std::vector<double>(50, 0.0), 0.0), FitError);
    CHECK_THROWS_AS(fit_reverberation(tau, flat, 1.0), FitError);
    CHECK_THROWS_AS(fit_reverberation(tau, std::vector<double>(3, 1.0), 0.0), DomainError);
}

TEST_CASE("Kolmogorov distribution")
{
    CHECK_THAT(kolmogorov_survival(0.5), WithinAbs(0.9639452436648751, 1e-10));
    CHECK_THAT(kolmogorov_survival(1.0), WithinAbs(0.26999967167735456, 1e-10));
    CHECK_THAT(kolmogorov_survival(1.5), WithinAbs(0.022217962616525127, 1e-10));
    CHECK_THAT(kolmogorov_survival(2.0), WithinAbs(0.0006709252557796953, 1e-12));
    CHECK(kolmogorov_survival(0.0) == 1.0);
    // Both series agree at the switch point
    CHECK_THAT(kolmogorov_survival(1.18 - 1e-9), WithinAbs(kolmogorov_survival(1.18), 1e-8));
}

TEST_CASE("KS test against the exponential law")
{
    const std::vector<double> x{0.1, 0.5, 0.9, 1.3, 2.2, 0.05, 3.1, 0.7};
    const auto ks = ks_test_exponential(x);
    CHECK(ks.n == 8);
    CHECK_THAT(ks.statistic, WithinAbs(0.15483741803595957, 1e-12));
    const double sn = std::sqrt(8.0);
    CHECK_THAT(ks.p_value, WithinAbs(kolmogorov_survival((sn + 0.12 + 0.11 / sn) * ks.statistic), 1e-12));
    CHECK(ks.p_value > 0.9);

    // Rate scaling
    std::vector<double> y(x);
    for (double &v : y)
        v *= 0.5;
    CHECK_THAT(ks_test_exponential(y, 2.0).statistic, WithinAbs(ks.statistic, 1e-12));
    CHECK_THROWS_AS(ks_test_exponential(std::vector<double>{}), DomainError);
    CHECK_THROWS_AS(ks_test_exponential(x, 0.0), DomainError);
}

TEST_CASE("Material tokens")
{
    CHECK_FALSE(parse_material("best_fit").has_value());
    CHECK(std::holds_alternative<Metal>(*parse_material("metal")));
    CHECK(std::get<Dielectric>(*parse_material("dielectric:4")).eps_r == 4.0);
    CHECK(std::get<ExplicitReflectivity>(*parse_material("explicit:0.25")).gamma_sq == 0.25);
    CHECK(material_token(parse_material("dielectric:2.5")) == "dielectric:2.5");
    CHECK(material_token(std::nullopt) == "best_fit");
    CHECK_THROWS_AS(parse_material("wood"), DomainError);
    CHECK_THROWS_AS(parse_material("dielectric:0.5"), DomainError);
    CHECK_THROWS_AS(parse_material("explicit:2"), DomainError);
}

TEST_CASE("Room table parsing")
{
    const std::string text = "# comment\n"
                             "label,n_links,dim_a_m,dim_b_m,d_s_m,measured_median_db,material\n"
                             "\"Hall, east\",3,10,8,4,-70.5,metal\n"
                             "\"Say \"\"hi\"\"\",0,3,3,1.5,nan,explicit:0.5\n";
    const auto rows = parse_rooms_csv(text, "mem");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].label == "Hall, east");
    CHECK(rows[0].n_links == 3);
    CHECK(rows[0].measured_median_db == -70.5);
    CHECK(rows[1].label == "Say \"hi\"");
    CHECK(std::isnan(rows[1].measured_median_db));

    const std::string head = "label,n_links,dim_a_m,dim_b_m,d_s_m,measured_median_db,material\n";
    CHECK_THROWS_AS(parse_rooms_csv("", "mem"), DomainError);
    CHECK_THROWS_AS(parse_rooms_csv("a,b\n", "mem"), DomainError);
    CHECK_THROWS_AS(parse_rooms_csv(head + "x,1,2,3\n", "mem"), DomainError);
    CHECK_THROWS_AS(parse_rooms_csv(head + "\"x,1,2,3,4,5,metal\n", "mem"), DomainError);
    CHECK_THROWS_AS(parse_rooms_csv(head + "x,1.5,2,3,1,-70,metal\n", "mem"), DomainError);
    CHECK_THROWS_AS(parse_rooms_csv(head + "x,1,2,3,0,-70,metal\n", "mem"), DomainError);
    try
    {
        parse_rooms_csv(head + "x,1,2,3,1,-70,metal\ny,1,2,3,1,oops,metal\n", "rooms.csv");
        FAIL("expected an error");
    }
    catch (const DomainError &e)
    {
        CHECK(std::string(e.what()).find("rooms.csv:3") != std::string::npos);
    }
}

TEST_CASE("Shipped room table matches the compiled-in rows")
{
    const auto rows = load_rooms_csv(BACKSCATTER_DATA_DIR "/measured_rooms.csv");
    const auto &ref = reference_rooms();
    REQUIRE(rows.size() == ref.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        CHECK(rows[i].label == ref[i].label);
        CHECK(rows[i].n_links == ref[i].n_links);
        CHECK(rows[i].d_s_m == ref[i].d_s_m);
        CHECK(rows[i].measured_median_db == ref[i].measured_median_db);
        CHECK(rows[i].material.has_value() == ref[i].material.has_value());
    }
    CHECK_THROWS_AS(load_rooms_csv("/nonexistent/rooms.csv"), DomainError);
}

TEST_CASE("Room report against the measured medians")
{
    const auto report = room_report(reference_rooms(), CarrierSpec{});
    REQUIRE(report.entries.size() == 14);
    const auto &offices = report.entries[0];
    CHECK(offices.gamma_sq == 1.0);
    CHECK_THAT(offices.prediction_db, WithinAbs(-64.91276902984139, 1e-9));
    CHECK_THAT(offices.error_db, WithinAbs(1.787, 1e-3));
    const auto &cafeteria = report.entries[2];
    CHECK_THAT(cafeteria.prediction_db, WithinAbs(-81.39094384872776, 1e-9));
    CHECK_THAT(report.rms_db, WithinAbs(2.0148, 1e-3));
    CHECK(report.rms_db <= 3.0);
    for (const auto &e : report.entries)
        CHECK((e.gamma_sq == 1.0 || e.gamma_sq == 0.25));

    MeasuredRoom unknown{"x", 1, 3.0, 3.0, 1.5, std::numeric_limits<double>::quiet_NaN(), std::nullopt};
    CHECK_THROWS_AS(room_report(std::vector<MeasuredRoom>{unknown}, CarrierSpec{}), DomainError);
    unknown.material = ExplicitReflectivity{0.5};
    const auto r = room_report(std::vector<MeasuredRoom>{unknown}, CarrierSpec{});
    CHECK(r.entries[0].gamma_sq == 0.5);
    CHECK(std::isnan(r.entries[0].error_db));
    CHECK_THROWS_AS(room_report(std::vector<MeasuredRoom>{}, CarrierSpec{}), DomainError);
}
