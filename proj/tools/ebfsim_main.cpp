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

#include "ebfsim/simcli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

// Leftover tokens are scenario overrides: "--key value" pairs.
std::vector<std::pair<std::string, std::string>> pair_up(const std::vector<std::string>& extras) {
    std::vector<std::pair<std::string, std::string>> kv;
    for (std::size_t i = 0; i < extras.size(); ++i) {
        std::string key = extras[i];
        if (key.rfind("--", 0) != 0)
            throw std::invalid_argument("expected --key, got '" + key + "'");
        key = key.substr(2);
        const auto eq = key.find('=');
        if (eq != std::string::npos) {
            kv.emplace_back(key.substr(0, eq), key.substr(eq + 1));
            continue;
        }
        if (i + 1 >= extras.size())
            throw std::invalid_argument("missing value for '--" + key + "'");
        kv.emplace_back(key, extras[++i]);
    }
    return kv;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid energy beamforming link-level simulator"};
    app.require_subcommand(1);

    std::string preset_name = "joint_alloc";
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    bool trials_given = false;
    bool seed_given = false;

    CLI::App* run = app.add_subcommand("run", "Execute a preset sweep and write CSV output");
    run->add_option("--preset", preset_name, "Preset name (see list-presets)");
    run->add_option("--config", config_path, "key=value configuration file");
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--trials", trials, "Monte Carlo trials per point")
        ->each([&](const std::string&) { trials_given = true; });
    run->add_option("--seed", seed, "Master seed")->each([&](const std::string&) {
        seed_given = true;
    });
    run->allow_extras();

    CLI::App* list = app.add_subcommand("list-presets", "List available presets");

    CLI::App* validate_cmd = app.add_subcommand("validate", "Check a configuration file");
    std::string validate_path;
    validate_cmd->add_option("--config", validate_path, "key=value configuration file")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const std::string& name : ebfsim::preset_names())
                std::cout << name << "\n";
            return 0;
        }
        if (validate_cmd->parsed()) {
            const auto entries = ebfsim::read_config_file(validate_path);
            ebfsim::make_run_config(entries, {});
            std::cout << "ok\n";
            return 0;
        }
        // run
        std::vector<std::string> extras = run->remaining();
        std::vector<std::pair<std::string, std::string>> flags = pair_up(extras);
        flags.emplace_back("preset", preset_name);
        flags.emplace_back("out", out_dir);
        if (trials_given)
            flags.emplace_back("trials", std::to_string(trials));
        if (seed_given)
            flags.emplace_back("seed", std::to_string(seed));
        std::vector<std::pair<std::string, std::string>> file_entries;
        if (!config_path.empty())
            file_entries = ebfsim::read_config_file(config_path);
        const ebfsim::RunConfig config = ebfsim::make_run_config(file_entries, flags);
        return ebfsim::execute_run(config);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
