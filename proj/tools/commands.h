// Copyright 2026 The starqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "starqed/pipelines.h"

namespace starqed::cli {

struct CliConfig {
    std::string command;
    std::string device;  // empty: command default (A for lifetime/budget/detectors, B otherwise)
    uint64_t seed = 1;
    std::size_t shots = 100000;
    bool shots_proportional = false;
    int cycles = 20;
    std::string out = "out";
    std::size_t threads = 1;
    std::string t2 = "star";
    std::string stab_order = "xz";
    std::string sigma = "syndrome-change";
    bool noiseless = false;

    std::vector<std::string> inputs;  // empty: command default
    std::string stabilizer = "both";  // stabilizer-tomo: x, z or both
    std::string settings_mode = "exhaustive";
    std::size_t settings = 81;
    std::size_t shots_per_setting = 2000;
    std::vector<int> tomography_cycles;  // bell
    std::size_t bootstrap = 1000;
    bool eigen_cleanup = false;
    bool include_all_removed = false;  // budget
    std::string batch_out;              // lifetime / bell: binary container of the last run
};

/// Validates the configuration and builds the run context.
RunContext make_context(const CliConfig& config);

/// Default device of a command.
std::string default_device(const std::string& command);

/// JSON manifest: command, configuration, its digest, seed and version.
std::string manifest_json(const CliConfig& config, const RunContext& ctx, const std::vector<std::string>& files);

int cmd_stabilizer_tomo(const CliConfig& config);
int cmd_lifetime(const CliConfig& config);
int cmd_tomography(const CliConfig& config);
int cmd_bell(const CliConfig& config);
int cmd_budget(const CliConfig& config);
int cmd_detectors(const CliConfig& config);

}  // namespace starqed::cli
