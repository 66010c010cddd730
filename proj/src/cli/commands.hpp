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

#ifndef BACKSCATTER_CLI_COMMANDS_HPP
#define BACKSCATTER_CLI_COMMANDS_HPP

#include "backscatter/validation.hpp"

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace backscatter::cli
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_validation_failed = 1,
    exit_config_error = 2,
    exit_runtime_error = 3
};

// Output file name and contents
using FileSet = std::vector<std::pair<std::string, std::string>>;

// Writes every file to a temporary name in `dir`, then renames them into place
void write_atomically(const std::filesystem::path &dir, const FileSet &files);

// Runs one subcommand. args excludes the program name, e.g. {"predict", "--config", "rooms.json"}.
int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// Runs each subcommand twice with the same seed into separate directories and compares the bytes
CheckResult determinism_check(std::uint64_t seed);

// Simulation checks plus the determinism check (id 13); all when `ids` is empty
ValidationReport full_validation(std::uint64_t seed, const std::vector<int> &ids = {});

inline constexpr int check_count = 13;

} // namespace backscatter::cli

#endif
