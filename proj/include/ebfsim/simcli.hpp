// ebfsim - link-level simulator for hybrid energy beamforming over Rician channels
// Copyright (C) 2026 the ebfsim authors
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

#ifndef EBFSIM_SIMCLI_HPP
#define EBFSIM_SIMCLI_HPP

#include "ebfsim/experiments.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ebfsim {

// Fully resolved run description: scenario plus preset dispatch. Invalid
// configurations are rejected while building, before any computation.
struct RunConfig {
    ScenarioConfig scenario;
    std::string preset_name = "joint_alloc";
    std::string out_dir = ".";
    std::uint64_t trials = 0;      // 0 keeps the preset default
    std::uint64_t master_seed = 0; // used only when seed_set
    bool trials_set = false;
    bool seed_set = false;
};

// Power values accept W, mW, uW and dBm suffixes; bare numbers are watts.
double parse_power_value(const std::string& text);
// Time values accept s, ms, us, ns suffixes; bare numbers are seconds.
double parse_time_value(const std::string& text);

// Plain key=value lines, '#' comments; later lines win within the file.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

// Merges defaults <- file entries <- flag entries (later overrides earlier),
// then validates. Throws std::invalid_argument naming the offending key.
RunConfig make_run_config(const std::vector<std::pair<std::string, std::string>>& file_entries,
                          const std::vector<std::pair<std::string, std::string>>& flag_entries);

// Key/value dump of a config (meta sidecar content).
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& config);

// Executes the preset and writes <out>/<preset>.csv and <out>/<preset>.meta.
// Returns the process exit status.
int execute_run(const RunConfig& config);

} // namespace ebfsim

#endif
