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

#ifndef BACKSCATTER_SERIES_HPP
#define BACKSCATTER_SERIES_HPP

#include <span>
#include <vector>

namespace backscatter
{

double mean(std::span<const double> x);

// (x - <x>) / sqrt(<(x - <x>)^2>). Throws NumericalError when the variance is degenerate.
std::vector<double> standardize(std::span<const double> x);

// Circular autocorrelation <p(i) p(i + lag)> of the standardized sequence, lag = 0 .. n-1
std::vector<double> circular_autocorrelation(std::span<const double> x);

} // namespace backscatter

#endif
