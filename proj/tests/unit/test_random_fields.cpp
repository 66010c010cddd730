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
#include "backscatter/random_fields.hpp"
#include "backscatter/series.hpp"

#include <cmath>
#include <numeric>

using namespace backscatter;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Streams are reproducible and label-separated")
{
    RandomStream a = derive_stream(7, "x");
    RandomStream b = derive_stream(7, "x");
    RandomStream c = derive_stream(7, "y");
    RandomStream d = derive_stream(8, "x");
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 100; ++i)
    {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
        differs_c = differs_c || va != c.next_u64();
        differs_d = differs_d || va != d.next_u64();
    }
    CHECK(differs_c);
    CHECK(differs_d);

    const RandomStream parent = derive_stream(3, "root");
    CHECK(parent.child("seed", 4).label() == "root/seed/4");
    RandomStream c1 = parent.child("seed", 4);
    RandomStream c2 = derive_stream(3, "root/seed/4");
    CHECK(c1.normal() == c2.normal());
}

TEST_CASE("Uniform and normal deviates")
{
    RandomStream s = derive_stream(11, "moments");
    const int n = 200000;
    double su = 0.0, sn = 0.0, sn2 = 0.0, sc = 0.0;
    double umin = 1.0, umax = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double u = s.uniform();
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        su += u;
        const double z = s.normal();
        sn += z;
        sn2 += z * z;
        sc += std::norm(s.complex_normal());
    }
    CHECK(umin >= 0.0);
    CHECK(umax < 1.0);
    CHECK_THAT(su / n, WithinAbs(0.5, 5.0 * std::sqrt(1.0 / 12.0 / n)));
    CHECK_THAT(sn / n, WithinAbs(0.0, 5.0 / std::sqrt(n)));
    CHECK_THAT(sn2 / n, WithinAbs(1.0, 5.0 * std::sqrt(2.0 / n)));
    CHECK_THAT(sc / n, WithinAbs(1.0, 5.0 / std::sqrt(n)));
}

TEST_CASE("Azimuth grid")
{
    const AzimuthGrid g;
    CHECK(g.size() == 1800);
    CHECK_THAT(g.delta_phi_deg(), WithinRel(0.2, 1e-15));
    CHECK(AzimuthGrid::with_spacing(0.5).size() == 720);
    CHECK(AzimuthGrid::with_spacing(0.2) == g);
    CHECK_THROWS_AS(AzimuthGrid::with_spacing(0.7), ConfigurationError);
    CHECK_THROWS_AS(AzimuthGrid::with_spacing(0.0), ConfigurationError);
    CHECK(g.signed_offset_deg(0) == 0.0);
    CHECK(g.signed_offset_deg(900) == 180.0);
    for (std::size_t i = 1; i < g.size(); ++i)
        REQUIRE(g.signed_offset_deg(i) == -g.signed_offset_deg(g.size() - i) + (i == 900 ? 360.0 : 0.0));
}

TEST_CASE("Lognormal mean offset")
{
    CHECK_THAT(lognormal_mean_offset(7.0), WithinAbs(-5.641333477835415, 1e-12));
    CHECK_THAT(lognormal_mean_offset(4.0), WithinAbs(-1.8420680743952373, 1e-12));
    CHECK(lognormal_mean_offset(0.0) == 0.0);
    CHECK(LognormalFieldParams{}.mu_db() == lognormal_mean_offset(7.0));
    CHECK_THROWS_AS(lognormal_mean_offset(-1.0), DomainError);
}

TEST_CASE("Gaussian kernel has unit energy")
{
    const auto k = gaussian_kernel(3.5, 18);
    REQUIRE(k.size() == 37);
    double e = 0.0;
    for (double v : k)
        e += v * v;
    CHECK_THAT(e, WithinRel(1.0, 1e-12));
    for (std::size_t i = 0; i < k.size(); ++i)
        CHECK(k[i] == k[k.size() - 1 - i]);
}

TEST_CASE("Correlated lognormal field statistics")
{
    const AzimuthGrid grid;
    RandomStream s = derive_stream(5, "field");
    const LognormalFieldParams p{7.0, 1.0};
    double sum = 0.0, sum2 = 0.0, lag = 0.0;
    std::size_t n = 0;
    for (int f = 0; f < 200; ++f)
    {
        const auto x = correlated_lognormal_db(grid, p, s);
        REQUIRE(x.size() == grid.size());
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            sum += x[i];
            sum2 += x[i] * x[i];
            lag += (x[i] - p.mu_db()) * (x[(i + 5) % x.size()] - p.mu_db());
        }
        n += x.size();
    }
    const double m = sum / n;
    const double var = sum2 / n - m * m;
    CHECK_THAT(m, WithinAbs(p.mu_db(), 0.1));
    CHECK_THAT(std::sqrt(var), WithinAbs(7.0, 0.1));
    CHECK_THAT(lag / n / 49.0, WithinAbs(std::exp(-0.5), 0.03));
}

TEST_CASE("Correlated field edge cases")
{
    const AzimuthGrid grid;
    RandomStream s = derive_stream(5, "edge");
    for (double v : correlated_lognormal_db(grid, {0.0, 1.0}, s))
        REQUIRE(v == 0.0);
    CHECK_THROWS_AS(correlated_lognormal_db(AzimuthGrid::with_spacing(2.0), {7.0, 1.0}, s), ConfigurationError);
    CHECK_THROWS_AS(correlated_lognormal_db(grid, {-1.0, 1.0}, s), DomainError);

    RandomStream a = derive_stream(9, "same");
    RandomStream b = derive_stream(9, "same");
    CHECK(correlated_lognormal_db(grid, {7.0, 1.0}, a) == correlated_lognormal_db(grid, {7.0, 1.0}, b));
}

TEST_CASE("Complex Gaussian series")
{
    RandomStream s = derive_stream(2, "series");
    const auto xi = complex_gaussian_series(300.0, 740.0, 0.1, s);
    REQUIRE(xi.size() == 222000);
    double power = 0.0, cross_norm = 0.0;
    std::complex<double> cross{0.0, 0.0};
    for (std::size_t i = 0; i < xi.size(); ++i)
    {
        power += std::norm(xi[i]);
        if (i + 74 < xi.size())
        {
            cross += xi[i] * std::conj(xi[i + 74]);
            cross_norm += std::norm(xi[i]);
        }
    }
    CHECK_THAT(power / xi.size(), WithinAbs(1.0, 0.05));
    CHECK_THAT(std::abs(cross) / cross_norm, WithinAbs(std::exp(-0.5), 0.05));

    CHECK(complex_gaussian_series(0.01, 740.0, 0.1, s).size() == 7);
    CHECK_THROWS_AS(complex_gaussian_series(1.0, 740.0, 0.001, s), ConfigurationError);
    CHECK_THROWS_AS(complex_gaussian_series(0.001, 740.0, 0.1, s), DomainError);
    CHECK_THROWS_AS(complex_gaussian_series(1.0, -1.0, 0.1, s), DomainError);
}

TEST_CASE("Series helpers")
{
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    CHECK(mean(x) == 2.5);
    const auto z = standardize(x);
    CHECK_THAT(mean(z), WithinAbs(0.0, 1e-15));
    const auto r = circular_autocorrelation(x);
    CHECK_THAT(r[0], WithinRel(1.0, 1e-14));
    CHECK_THAT(r[1], WithinRel(r[3], 1e-14));
    CHECK_THROWS_AS(standardize(std::vector<double>{2.0, 2.0, 2.0}), NumericalError);
    CHECK_THROWS_AS(mean(std::vector<double>{}), DomainError);
}
