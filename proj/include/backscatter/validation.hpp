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

#ifndef BACKSCATTER_VALIDATION_HPP
#define BACKSCATTER_VALIDATION_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace backscatter
{

struct CheckResult
{
    int id = 0;
    std::string name;
    double statistic = 0.0; // headline number compared against the tolerance
    std::string tolerance;
    bool pass = false;
    double runtime_s = 0.0;
    std::string detail; // secondary statistics
};

struct ValidationReport
{
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool all_passed() const;
};

inline constexpr int simulation_check_count = 12;

// Runs one Monte Carlo or closed-form check, 1 .. simulation_check_count.
// Throws DomainError for an unknown id.
CheckResult run_check(int id, std::uint64_t seed);

// Runs the requested checks in ascending id order (all when `ids` is empty)
ValidationReport run_validation(std::uint64_t seed, const std::vector<int> &ids = {});

} // namespace backscatter

#endif
