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

#ifndef BACKSCATTER_ERRORS_HPP
#define BACKSCATTER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace backscatter
{

// Argument outside the mathematical domain of an operation (negative distance, eps_r < 1, ...)
class DomainError : public std::invalid_argument
{
public:
    explicit DomainError(const std::string &what) : std::invalid_argument(what) {}
};

// Inconsistent or unresolvable configuration (grid too coarse, probe under-sampled, ...)
class ConfigurationError : public std::invalid_argument
{
public:
    explicit ConfigurationError(const std::string &what) : std::invalid_argument(what) {}
};

// Quadrature failed to converge or a statistic is degenerate
class NumericalError : public std::runtime_error
{
public:
    explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

// Curve fit could not be carried out on the supplied data
class FitError : public std::runtime_error
{
public:
    explicit FitError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace backscatter

#endif
