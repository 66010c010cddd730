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

#include "backscatter/errors.hpp"
#include "backscatter/model.hpp"

#include <cmath>

using namespace backscatter;
using Catch::Approx;
using Catch::Matchers::WithinRel;
using Catch::Matchers::WithinAbs;

// Reference values below were computed independently with numpy / scipy.integrate.quad.

TEST_CASE("Carrier wavelength")
{
    CHECK_THAT(wavelength(28.0e9), WithinRel(0.0107068735, 1e-12));
    CHECK_THAT(wavelength(3.0e9), WithinRel(0.09993081933333334, 1e-12));
    CHECK_THAT(CarrierSpec().wavenumber(), WithinRel(two_pi / 0.0107068735, 1e-12));
    CHECK_THROWS_AS(wavelength(0.0), DomainError);
    CHECK_THROWS_AS(wavelength(-1.0), DomainError);
    CHECK_THROWS_AS(CarrierSpec(std::nan("")), DomainError);
}

TEST_CASE("Closed-form average backscatter")
{
    const double lambda = CarrierSpec().wavelength_m();
    CHECK_THAT(to_db(average_backscatter_ratio(1.5, lambda, 1.0)), WithinAbs(-64.91276902984139, 1e-9));
    CHECK_THAT(to_db(average_backscatter_ratio(3.0, lambda, 1.0)), WithinAbs(-70.93336894312101, 1e-9));
    CHECK_THAT(to_db(average_backscatter_ratio(10.0, lambda, 1.0)), WithinAbs(-81.39094384872776, 1e-9));

    // Inverse-square in d_s and linear in gamma^2
    const double p = average_backscatter_ratio(2.0, lambda, 1.0);
    CHECK_THAT(to_db(average_backscatter_ratio(4.0, lambda, 1.0) / p), WithinAbs(-20.0 * std::log10(2.0), 1e-12));
    CHECK_THAT(average_backscatter_ratio(2.0, lambda, 0.25), WithinRel(0.25 * p, 1e-14));
    CHECK(average_backscatter_ratio(2.0, lambda, 0.0) == 0.0);

    CHECK_THROWS_AS(average_backscatter_ratio(0.0, lambda, 1.0), DomainError);
    CHECK_THROWS_AS(average_backscatter_ratio(-1.0, lambda, 1.0), DomainError);
    CHECK_THROWS_AS(average_backscatter_ratio(1.0, lambda, 1.5), DomainError);
}

TEST_CASE("Fresnel reflectivity at a point")
{
    const double normal = std::pow((std::sqrt(3.0) - 1.0) / (std::sqrt(3.0) + 1.0), 2);
    CHECK_THAT(fresnel_power_reflectivity(3.0, 0.0, Polarization::TE), WithinRel(normal, 1e-12));
    CHECK_THAT(fresnel_power_reflectivity(3.0, 0.0, Polarization::TM), WithinRel(normal, 1e-12));
    CHECK_THAT(fresnel_power_reflectivity(3.0, pi / 6.0, Polarization::TE), WithinRel(0.09850768427922489, 1e-10));
    CHECK_THAT(fresnel_power_reflectivity(3.0, pi / 6.0, Polarization::TM), WithinRel(0.04874778585413646, 1e-10));

    // Brewster angle atan(sqrt(eps_r)) for TM
    CHECK_THAT(fresnel_power_reflectivity(3.0, std::atan(std::sqrt(3.0)), Polarization::TM), WithinAbs(0.0, 1e-20));
    CHECK_THAT(fresnel_power_reflectivity(3.0, pi / 2.0, Polarization::TE), WithinAbs(1.0, 1e-12));
    CHECK_THAT(fresnel_power_reflectivity(1.0, 0.7, Polarization::TE), WithinAbs(0.0, 1e-15));
    CHECK_THROWS_AS(fresnel_power_reflectivity(0.5, 0.1, Polarization::TE), DomainError);
}

TEST_CASE("Incidence-averaged Fresnel reflectivity")
{
    CHECK_THAT(fresnel_average_reflectivity(3.0), WithinRel(0.2549387185317341, 1e-8));
    CHECK_THAT(fresnel_average_reflectivity(3.0, Polarization::TM), WithinRel(0.09834189824721593, 1e-8));
    CHECK_THAT(fresnel_average_reflectivity(3.0, Polarization::Unpolarized), WithinRel(0.17664030838947503, 1e-8));
    CHECK_THAT(fresnel_average_reflectivity(2.0), WithinRel(0.18028136579451198, 1e-8));
    CHECK_THAT(fresnel_average_reflectivity(10.0), WithinRel(0.47067023114841555, 1e-8));
    CHECK_THAT(fresnel_average_reflectivity(1.0), WithinAbs(0.0, 1e-15));

    // Approaches a perfect conductor
    CHECK(fresnel_average_reflectivity(1.0e6) > 0.99);
    CHECK(fresnel_average_reflectivity(1.0e6) <= 1.0);

    // Monotone in eps_r
    double prev = 0.0;
    for (double e : {1.5, 2.0, 3.0, 5.0, 8.0, 20.0})
    {
        const double g = fresnel_average_reflectivity(e);
        CHECK(g > prev);
        prev = g;
    }
    CHECK_THROWS_AS(fresnel_average_reflectivity(0.9), DomainError);
}

TEST_CASE("Surface classes")
{
    CHECK(power_reflectivity(Metal{}) == 1.0);
    CHECK_THAT(power_reflectivity(Dielectric{3.0}), WithinRel(0.2549387185317341, 1e-8));
    CHECK(power_reflectivity(ExplicitReflectivity{0.25}) == 0.25);
    CHECK_THROWS_AS(power_reflectivity(ExplicitReflectivity{1.2}), DomainError);
    CHECK(describe(SurfaceClass{Metal{}}) == "metal");
}

TEST_CASE("Clutter integral quadrature matches the closed form")
{
    const double lambda = CarrierSpec().wavelength_m();
    const double closed = average_backscatter_ratio(3.0, lambda, 1.0);
    for (double hpbw : {5.0, 10.0, 20.0})
    {
        const double rms = deg_to_rad(hpbw_to_rms(hpbw));
        const double q = clutter_integral_quadrature(3.0, lambda, 1.0, rms, rms, 1.0);
        CHECK_THAT(q, WithinRel(closed, 0.02));
    }
    const double rms = deg_to_rad(hpbw_to_rms(10.0));
    const double full = clutter_integral_quadrature(2.0, lambda, 1.0, rms, rms, 1.0);
    CHECK_THAT(clutter_integral_quadrature(2.0, lambda, 0.25, rms, rms, 1.0), WithinRel(0.25 * full, 1e-12));
    CHECK_THAT(clutter_integral_quadrature(2.0, lambda, 1.0, rms, rms, 2.0), WithinRel(2.0 * full, 1e-12));
    CHECK_THROWS_AS(clutter_integral_quadrature(0.0, lambda, 1.0, rms, rms, 1.0), DomainError);
    CHECK_THROWS_AS(clutter_integral_quadrature(1.0, lambda, 1.0, 0.0, rms, 1.0), DomainError);
}

TEST_CASE("Room prediction")
{
    RoomSpec room{"office", 3.0, 3.0, std::nullopt, Metal{}, 1e-8};
    CHECK(room.resolved_d_s() == 1.5);
    PredictionRecord r = predict_room(room, CarrierSpec());
    CHECK_THAT(r.p0_db, WithinAbs(-64.91276902984139, 1e-9));
    CHECK(r.gamma_sq == 1.0);

    room.surface = Dielectric{3.0};
    r = predict_room(room, CarrierSpec());
    CHECK_THAT(r.p0_db, WithinAbs(-64.91276902984139 + 10.0 * std::log10(0.2549387185317341), 1e-7));

    room.d_s_m = 4.0;
    CHECK(room.resolved_d_s() == 4.0);

    room.width_m = 0.0;
    CHECK_THROWS_AS(room.validate(), DomainError);
    room.width_m = 3.0;
    room.t_rev_s = -1.0;
    CHECK_THROWS_AS(predict_room(room, CarrierSpec()), DomainError);
}

TEST_CASE("Beamwidth conversions")
{
    CHECK_THAT(hpbw_to_rms(10.0), WithinRel(4.246609001440095, 1e-12));
    CHECK_THAT(rms_to_hpbw(hpbw_to_rms(7.3)), WithinRel(7.3, 1e-14));
    CHECK_THAT(to_db(from_db(-13.7)), WithinAbs(-13.7, 1e-12));
    CHECK(std::isinf(to_db(0.0)));
}
