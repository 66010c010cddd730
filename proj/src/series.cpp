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

#include "backscatter/series.hpp"
#include "backscatter/errors.hpp"

#include <cmath>
#include <numeric>

namespace backscatter
{

double mean(std::span<const double> x)
{
    if (x.empty())
        throw DomainError("Mean of an empty sequence.");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

std::vector<double> standardize(std::span<const double> x)
{
    const double m = mean(x);
    double var = 0.0;
    for (double v : x)
        var += (v - m) * (v - m);
    var /= static_cast<double>(x.size());

    // Relative threshold: a constant sequence leaves only rounding noise
    const double scale = std::max(std::abs(m), 1e-300);
    if (!(var > 1e-24 * scale * scale) || !std::isfinite(var))
        throw NumericalError("Degenerate variance: sequence is constant.");

    const double inv = 1.0 / std::sqrt(var);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = (x[i] - m) * inv;
    return out;
}

std::vector<double> circular_autocorrelation(std::span<const double> x)
{
    const std::vector<double> p = standardize(x);
    const std::size_t n = p.size();
    std::vector<double> r(n, 0.0);
    for (std::size_t lag = 0; lag < n; ++lag)
    {
        double acc = 0.0;
        for (std::size_t i = 0, j = lag; i < n; ++i)
        {
            acc += p[i] * p[j];
            if (++j == n)
                j = 0;
        }
        r[lag] = acc / static_cast<double>(n);
    }
    return r;
}

} // namespace backscatter
