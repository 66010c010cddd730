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
#include "backscatter/errors.hpp"
#include "backscatter/model.hpp"
#include "backscatter/target.hpp"

#include <cmath>
#include <limits>

using namespace backscatter;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

SceneSpec short_scene()
{
    SceneSpec spec;
    spec.trajectory.waypoints = {{0.0, {-1.0, 1.5}}, {1.0, {1.0, 1.5}}};
    return spec;
}

} // namespace

TEST_CASE("Trajectory interpolation")
{
    const Trajectory line{{{0.0, {5.0, 0.0}}, {5.0, {0.5, 0.0}}}};
    const auto s = trajectory_state(line, 2.5);
    CHECK_THAT(s.range_m, WithinRel(2.75, 1e-12));
    CHECK_THAT(s.bearing_deg, WithinAbs(0.0, 1e-12));
    CHECK_THAT(trajectory_state(line, 5.0).range_m, WithinRel(0.5, 1e-12));
    CHECK_THROWS_AS(trajectory_state(line, 5.1), DomainError);
    CHECK_THROWS_AS(trajectory_state(line, -0.1), DomainError);

    const Trajectory fixed{{{0.0, {0.0, 3.0}}}};
    const auto f = trajectory_state(fixed, 0.0);
    CHECK_THAT(f.range_m, WithinRel(3.0, 1e-12));
    CHECK_THAT(f.bearing_deg, WithinAbs(90.0, 1e-12));

    const Trajectory below{{{0.0, {0.0, -2.0}}}};
    CHECK_THAT(trajectory_state(below, 0.0).bearing_deg, WithinAbs(270.0, 1e-12));
}

TEST_CASE("Trajectory validation")
{
    CHECK_THROWS_AS(Trajectory{}.validate(), DomainError);
    CHECK_THROWS_AS((Trajectory{{{0.0, {1.0, 0.0}}, {0.0, {2.0, 0.0}}}}.validate()), DomainError);
    CHECK_THROWS_AS((Trajectory{{{0.0, {0.0, 0.0}}}}.validate()), DomainError);
    // Segment crossing the radar
    const Trajectory through{{{0.0, {-1.0, 0.0}}, {2.0, {1.0, 0.0}}}};
    CHECK_THROWS_AS(trajectory_state(through, 1.0), DomainError);
}

TEST_CASE("Radar equation")
{
    const double lambda = wavelength(28e9);
    const double sigma = from_db(-8.0);
    const double p5 = radar_equation_ratio(lambda, sigma, 5.0, 1.0, 1.0);
    CHECK_THAT(to_db(p5), WithinAbs(-108.34184266238948, 1e-9));
    CHECK_THAT(to_db(radar_equation_ratio(lambda, sigma, 10.0, 1.0, 1.0)) - to_db(p5),
               WithinAbs(-40.0 * std::log10(2.0), 1e-9));
    CHECK_THAT(radar_equation_ratio(lambda, sigma, 5.0, 2.0, 3.0), WithinRel(6.0 * p5, 1e-12));
    CHECK(radar_equation_ratio(lambda, 0.0, 5.0, 1.0, 1.0) == 0.0);
    CHECK_THROWS_AS(radar_equation_ratio(lambda, sigma, 0.0, 1.0, 1.0), DomainError);
}

TEST_CASE("Target response uses the pattern gains")
{
    const AzimuthGrid grid;
    const auto horn = make_pattern(GaussianHorn{10.0}, grid);
    const auto omni = make_pattern(Omni{}, grid);
    const CarrierSpec carrier;
    const TargetSpec constant{-8.0, 0.1, FluctuationModel::Constant};
    const TargetState state{5.0, 30.0};
    const double base = radar_equation_ratio(carrier.wavelength_m(), from_db(-8.0), 5.0, 1.0, 1.0);

    CHECK_THAT(target_response(state, constant, {0.3, 0.0}, carrier, omni, omni, 0.0), WithinRel(base, 1e-9));
    CHECK_THAT(target_response(state, constant, {1.0, 0.0}, carrier, horn, omni, 30.0),
               WithinRel(base * horn.directivity(), 1e-9));
    CHECK_THAT(target_response(state, constant, {1.0, 0.0}, carrier, horn, omni, 35.0),
               WithinRel(0.5 * base * horn.directivity(), 1e-9));

    const TargetSpec fluct{-8.0, 0.1, FluctuationModel::SwerlingI};
    CHECK_THAT(target_response(state, fluct, {0.0, 2.0}, carrier, omni, omni, 0.0), WithinRel(4.0 * base, 1e-9));

    TargetSpec none;
    none.sigma0_dbsm = -std::numeric_limits<double>::infinity();
    CHECK_NOTHROW(none.validate());
    CHECK(target_response(state, none, {1.0, 0.0}, carrier, omni, omni, 0.0) == 0.0);
    TargetSpec bad;
    bad.coherence_time_s = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = TargetSpec{};
    bad.sigma0_dbsm = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("Scene sizing and validation")
{
    const SceneSpec walk = default_walking_scene(0.9);
    CHECK_NOTHROW(walk.validate());
    CHECK_THAT(walk.resolved_duration_s(), WithinRel(6.0 / 0.9, 1e-12));
    CHECK_THROWS_AS(default_walking_scene(0.0), DomainError);

    SceneSpec s = short_scene();
    CHECK(s.sample_count() == 741);
    s.duration_s = 0.5;
    CHECK_THROWS_AS(s.validate(), ConfigurationError);
    s = short_scene();
    s.target->coherence_time_s = 1e-3;
    CHECK_THROWS_AS(s.validate(), ConfigurationError);
    s = short_scene();
    s.sample_rate_hz = 0.0;
    CHECK_THROWS_AS(s.validate(), ConfigurationError);
}

TEST_CASE("Composed scene layout and reproducibility")
{
    const SceneSpec spec = short_scene();
    const RandomStream stream = derive_stream(21, "scene");
    const auto a = compose_scene(spec, stream);
    const auto b = compose_scene(spec, stream);
    REQUIRE(a.samples.size() == 741);
    CHECK(a.columns == 148);
    CHECK(a.rotations == 5);
    CHECK(a.binned.size() == a.rotations * a.columns);
    for (std::size_t i = 0; i < a.samples.size(); ++i)
    {
        REQUIRE(a.samples[i].power == b.samples[i].power);
        REQUIRE(a.samples[i].target.has_value());
    }
    CHECK_THAT(a.samples[74].pointing_deg, WithinRel(180.0, 1e-12));
    CHECK_THAT(a.samples[10].t_s, WithinRel(10.0 / 740.0, 1e-12));
    CHECK(a.at(1, 3) == a.samples[148 + 3].power);
    const auto db = a.binned_db();
    CHECK_THAT(db[5], WithinAbs(to_db(a.binned[5]), 1e-12));
}

TEST_CASE("A zero-RCS target leaves the clutter unchanged")
{
    SceneSpec with = short_scene();
    with.target->sigma0_dbsm = -std::numeric_limits<double>::infinity();
    SceneSpec without = short_scene();
    without.target.reset();
    const RandomStream stream = derive_stream(22, "scene");
    const auto a = compose_scene(with, stream);
    const auto b = compose_scene(without, stream);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i)
    {
        REQUIRE(a.samples[i].power == b.samples[i].power);
        REQUIRE(a.samples[i].target_power == 0.0);
    }
    CHECK_FALSE(b.samples[0].target.has_value());
}

TEST_CASE("Target echo adds to the clutter")
{
    SceneSpec spec = short_scene();
    spec.target->model = FluctuationModel::Constant;
    spec.target->sigma0_dbsm = 20.0;
    const auto scene = compose_scene(spec, derive_stream(23, "scene"));
    // Strongest sample is near the target bearing
    std::size_t best = 0;
    for (std::size_t i = 0; i < scene.samples.size(); ++i)
        if (scene.samples[i].target_power > scene.samples[best].target_power)
            best = i;
    const auto &s = scene.samples[best];
    double off = std::fmod(s.pointing_deg - s.target->bearing_deg + 540.0, 360.0) - 180.0;
    CHECK(std::abs(off) < 2.0);
    CHECK(s.power > 0.1 * s.target_power);
}
