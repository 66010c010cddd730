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

#include "backscatter/antenna.hpp"
#include "backscatter/clutter.hpp"
#include "backscatter/errors.hpp"
#include "backscatter/model.hpp"

#include <cmath>

using namespace backscatter;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

RoomSpec lab()
{
    return RoomSpec{"lab", 15.0, 5.0, 2.5, Metal{}, 10.0e-9};
}

} // namespace

TEST_CASE("Spin calibration cancels the angular sum")
{
    CHECK_THAT(spin_calibration(AzimuthGrid{}), WithinRel(1800.0, 1e-12));
    CHECK_THAT(spin_calibration(AzimuthGrid::with_spacing(0.5)), WithinRel(720.0, 1e-12));
}

TEST_CASE("Channel generation is deterministic and sized")
{
    const AzimuthGrid grid;
    RandomStream a = derive_stream(4, "channel");
    RandomStream b = derive_stream(4, "channel");
    const auto fa = gen_azimuth_channel(lab(), ClutterParams{}, grid, {}, a);
    const auto fb = gen_azimuth_channel(lab(), ClutterParams{}, grid, {}, b);
    REQUIRE(fa.amplitudes.size() == 1800);
    CHECK(fa.amplitudes == fb.amplitudes);
    CHECK(fa.p_v_db == fb.p_v_db);
    CHECK_THAT(to_db(fa.p0), WithinAbs(-69.34974402216851, 1e-9));

    RandomStream c = derive_stream(4, "channel");
    ClutterParams coarse;
    coarse.phi_rms_deg = 0.1;
    CHECK_THROWS_AS(gen_azimuth_channel(lab(), coarse, grid, {}, c), ConfigurationError);
    ClutterParams negative;
    negative.sigma_db = -1.0;
    CHECK_THROWS_AS(gen_azimuth_channel(lab(), negative, grid, {}, c), DomainError);
}

TEST_CASE("Omni spun power averages to the closed-form ratio")
{
    const AzimuthGrid grid;
    const auto omni = make_pattern(Omni{}, grid);
    ClutterParams flat;
    flat.sigma_v_db = 0.0;
    flat.sigma_db = 0.0;
    const std::vector<double> pointing{0.0};
    RandomStream s = derive_stream(12, "omni");
    const int n = 3000;
    double acc = 0.0, p0 = 0.0;
    for (int r = 0; r < n; ++r)
    {
        const auto field = gen_azimuth_channel(lab(), flat, grid, {}, s);
        const auto spun = spin_response(field, omni, omni, pointing);
        acc += spun.power[0];
        p0 = spun.p0;
    }
    // Exponential power: relative standard error 1 / sqrt(n)
    CHECK_THAT(acc / n / p0, WithinAbs(1.0, 5.0 / std::sqrt(n)));
}

TEST_CASE("Single scatterer is weighted by both patterns")
{
    const AzimuthGrid grid;
    const auto horn = make_pattern(GaussianHorn{10.0}, grid);
    const auto omni = make_pattern(Omni{}, grid);
    AzimuthField field{grid, std::vector<cdouble>(grid.size()), 0.0, 1.0, {}, 0.01};
    field.amplitudes[50] = {2.0, 0.0}; // 10 deg

    const std::vector<double> pointings{10.0, 15.0, 0.0};
    const auto spun = spin_response(field, horn, omni, pointings);
    const double dphi = grid.delta_phi_rad();
    const double ft = omni.field()[0];
    for (std::size_t p = 0; p < pointings.size(); ++p)
    {
        const double w = horn.field_at(10.0 - pointings[p]) * ft * dphi;
        CHECK_THAT(spun.power[p], WithinRel(4.0 * w * w, 1e-9));
    }

    // Co-rotating transmitter: both beams on the scatterer
    const auto both = spin_response(field, horn, horn, pointings, std::nullopt);
    const double w = horn.field_at(0.0) * horn.field_at(0.0) * dphi;
    CHECK_THAT(both.power[0], WithinRel(4.0 * w * w, 1e-9));
    CHECK_THROWS_AS(spin_response(field, horn, omni, std::vector<double>{}), DomainError);
}

TEST_CASE("Moving the transceiver only changes phases")
{
    const AzimuthGrid grid;
    RandomStream s = derive_stream(6, "move");
    const auto f = gen_azimuth_channel(lab(), ClutterParams{}, grid, {0.0, 0.0}, s);
    const auto g = f.at_location({0.003, -0.002});
    const auto back = g.at_location({0.0, 0.0});
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        REQUIRE_THAT(std::abs(g.amplitudes[i]), WithinRel(std::abs(f.amplitudes[i]), 1e-12));
        REQUIRE_THAT(std::abs(back.amplitudes[i] - f.amplitudes[i]), WithinAbs(0.0, 1e-12 * std::abs(f.amplitudes[i])));
    }
    CHECK(g.location.x_m == 0.003);
}

TEST_CASE("Uniform pointings")
{
    const auto p = uniform_pointings(148);
    REQUIRE(p.size() == 148);
    CHECK(p[0] == 0.0);
    CHECK_THAT(p[74], WithinRel(180.0, 1e-14));
}

TEST_CASE("Delay envelope and grid")
{
    const double onset = 2.0 * 2.5 / speed_of_light;
    CHECK(pdp_envelope(onset * 0.999, 2.5, 10e-9) == 0.0);
    CHECK(pdp_envelope(onset, 2.5, 10e-9) == 1.0);
    CHECK_THAT(pdp_envelope(onset + 10e-9, 2.5, 10e-9), WithinRel(std::exp(-1.0), 1e-12));
    CHECK_THROWS_AS(pdp_envelope(1e-9, 0.0, 10e-9), DomainError);

    const DelayGrid g = DelayGrid::for_room(lab());
    CHECK_THAT(g.onset_s, WithinRel(onset, 1e-15));
    CHECK_THAT(g.tau_max_s - g.onset_s, WithinRel(std::log(1e4) * 10e-9, 1e-12));
    const std::size_t m0 = g.first_active_bin();
    CHECK(g.tau(m0) >= g.onset_s);
    CHECK(g.tau(m0 - 1) < g.onset_s);
    CHECK(g.tau(g.size() - 1) <= g.tau_max_s * (1.0 + 1e-9));

    DelayGrid bad = g;
    bad.tau_max_s = bad.onset_s;
    CHECK_THROWS_AS(bad.validate(), ConfigurationError);
}

TEST_CASE("Delay-azimuth channel is empty before the onset")
{
    const AzimuthGrid az = AzimuthGrid::with_spacing(0.5);
    DelayGrid dg = DelayGrid::for_room(lab(), 0.5e-9);
    RandomStream s = derive_stream(3, "delay");
    const auto field = gen_delay_azimuth_channel(lab(), ClutterParams{}, dg, az, s);
    REQUIRE(field.amplitudes.size() == dg.size() * az.size());
    const std::size_t m0 = dg.first_active_bin();
    for (std::size_t m = 0; m < m0; ++m)
        for (const auto &a : field.row(m))
            REQUIRE(a == cdouble{0.0, 0.0});
    CHECK(std::abs(field.row(m0)[0]) > 0.0);

    DelayGrid shifted = dg;
    shifted.onset_s *= 1.01;
    CHECK_THROWS_AS(gen_delay_azimuth_channel(lab(), ClutterParams{}, shifted, az, s), ConfigurationError);
}

TEST_CASE("Probe waveform")
{
    const auto w = make_probe_waveform(1e9, 20e9);
    CHECK(w.samples.size() == 21);
    CHECK_THAT(w.energy(), WithinRel(1.0, 1e-12));
    CHECK_THAT(w.duration_s(), WithinRel(1e-9, 1e-12));
    CHECK(w.value_at(-1e-12) == cdouble{0.0, 0.0});
    CHECK(w.value_at(2e-9) == cdouble{0.0, 0.0});
    CHECK(w.samples[10].real() > w.samples[0].real());

    const auto rect = make_probe_waveform(1e9, 10e9, ProbeShape::Rect);
    CHECK_THAT(rect.energy(), WithinRel(1.0, 1e-12));
    CHECK_THAT(rect.value_at(0.55e-9).real(), WithinRel(rect.samples[0].real(), 1e-12));

    CHECK_THROWS_AS(make_probe_waveform(1e9, 9e9), ConfigurationError);
    CHECK_THROWS_AS(make_probe_waveform(1e9, 20e9, ProbeShape::Tabulated), DomainError);
    CHECK_THROWS_AS(make_probe_waveform(-1.0, 20e9), DomainError);

    const auto tab = make_tabulated_probe({{3.0, 0.0}, {0.0, 4.0}}, 0.5, 1.0);
    CHECK_THAT(tab.energy(), WithinRel(1.0, 1e-12));
    CHECK_THROWS_AS(make_tabulated_probe({{0.0, 0.0}}, 0.1, 1.0), DomainError);
}

TEST_CASE("Band-limited map")
{
    const AzimuthGrid az = AzimuthGrid::with_spacing(0.5);
    const DelayGrid dg = DelayGrid::for_room(lab(), 0.1e-9);
    RandomStream s = derive_stream(8, "map");
    const auto field = gen_delay_azimuth_channel(lab(), ClutterParams{}, dg, az, s);
    const auto rx = make_pattern(GaussianHorn{10.0}, az);
    const auto tx = make_pattern(Omni{}, az);
    const auto probe = make_probe_waveform(1e9, 20e9);
    const std::vector<double> pointings{0.0, 90.0};
    const auto map = band_limit(field, probe, rx, tx, pointings);
    REQUIRE(map.power.size() == 2 * dg.size());
    const std::size_t m0 = dg.first_active_bin();
    for (std::size_t m = 0; m < m0; ++m)
        REQUIRE(map.at(0, m) == 0.0);
    CHECK(map.at(0, m0 + 5) > 0.0);
    const auto avg = map.azimuth_average();
    CHECK_THAT(avg[m0 + 5], WithinRel(0.5 * (map.at(0, m0 + 5) + map.at(1, m0 + 5)), 1e-12));

    const auto coarse = make_probe_waveform(1e9, 10e9);
    const DelayGrid fine = DelayGrid::for_room(lab(), 0.05e-9);
    RandomStream s2 = derive_stream(8, "map2");
    const auto field2 = gen_delay_azimuth_channel(lab(), ClutterParams{}, fine, az, s2);
    CHECK_THROWS_AS(band_limit(field2, coarse, rx, tx, pointings), ConfigurationError);
}
