// Copyright 2026 The pilotpart Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pilotpart/system_model.hpp"

namespace pilotpart::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 2,
    kValidationFailure = 3,
    kBudgetRefusal = 4,
};

/// Settings for a benchmark sweep. Seeds are always explicit.
struct ExperimentConfig {
    std::filesystem::path instance_file;  // when set, the generator fields are ignored
    int instances = 50;
    int users_min = 3;
    int users_max = 8;
    std::vector<int> pilots{2, 3};
    int aps = 16;
    GenerationConfig generator;
    std::vector<std::string> solvers{"greedy", "random", "worst-user", "local-search"};
    std::uint64_t seed = 1;
    std::uint64_t budget = 2'000'000;
    std::filesystem::path output_dir = ".";
    std::string report_format = "csv";
};

/// Reads an ExperimentConfig from a JSON object; absent keys keep defaults.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Throws std::invalid_argument when the configuration cannot run.
void validate_experiment_config(const ExperimentConfig& cfg);

/// Parses an AP-selection rule written as `top:<n>` or `energy:<theta>`.
ApSelectionRule parse_ap_rule(const std::string& text);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pilotpart::cli
