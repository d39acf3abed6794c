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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

namespace ebfsim {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse " + what + " value '" + text + "'");
    }
}

bool parse_bool(const std::string& text, const std::string& key) {
    if (text == "1" || text == "true" || text == "yes" || text == "on")
        return true;
    if (text == "0" || text == "false" || text == "no" || text == "off")
        return false;
    throw std::invalid_argument("key '" + key + "': cannot parse boolean '" + text + "'");
}

std::uint64_t parse_u64(const std::string& text, const std::string& key) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(text, &pos);
        if (pos != text.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("key '" + key + "': cannot parse integer '" + text + "'");
    }
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "n_antennas",     "coherence_time",   "ce_slot_fixed",  "dl_tx_power",
        "ul_pilot_power_max", "ul_pilot_power_fixed", "noise_psd", "carrier_freq",
        "distance",       "pathloss_exp",     "rice_factor",    "aoa_deg",
        "antenna_spacing", "unit_ref_atten",  "delta",          "delta_g",
        "delta_phi",      "api_distribution", "pwla_csv",       "linear_eh_efficiency",
        "freeze_api",     "api_redraw_precoder", "threads",     "trials",
        "seed",           "out",              "preset",
    };
    return keys;
}

} // namespace

double parse_power_value(const std::string& raw) {
    const std::string text = trim(raw);
    struct Suffix {
        const char* name;
        double scale;
        bool dbm;
    };
    static const Suffix suffixes[] = {
        {"dBm", 0.0, true}, {"dbm", 0.0, true}, {"mW", 1e-3, false},
        {"mw", 1e-3, false}, {"uW", 1e-6, false}, {"uw", 1e-6, false},
        {"W", 1.0, false},  {"w", 1.0, false},
    };
    for (const Suffix& s : suffixes) {
        if (ends_with(text, s.name)) {
            const double v = parse_double(trim(text.substr(0, text.size() - std::strlen(s.name))),
                                          "power");
            return s.dbm ? dbm_to_watts(v) : v * s.scale;
        }
    }
    return parse_double(text, "power");
}

double parse_time_value(const std::string& raw) {
    const std::string text = trim(raw);
    struct Suffix {
        const char* name;
        double scale;
    };
    static const Suffix suffixes[] = {{"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0}};
    for (const Suffix& s : suffixes) {
        if (ends_with(text, s.name)) {
            return s.scale *
                   parse_double(trim(text.substr(0, text.size() - std::strlen(s.name))), "time");
        }
    }
    return parse_double(text, "time");
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path);
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#')
            continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key=value");
        entries.emplace_back(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return entries;
}

namespace {

struct ConfigBuilder {
    RunConfig config;
    bool carrier_set = false;
    bool spacing_set = false;
    bool atten_set = false;
    bool n_set = false;

    void apply(const std::string& key, const std::string& value) {
        if (!known_keys().count(key))
            throw std::invalid_argument("unknown configuration key '" + key + "'");
        SystemParams& p = config.scenario.params;
        if (key == "n_antennas") {
            p.n_antennas = static_cast<int>(parse_u64(value, key));
            n_set = true;
        } else if (key == "coherence_time") {
            p.coherence_time = parse_time_value(value);
        } else if (key == "ce_slot_fixed") {
            p.ce_slot_fixed = parse_time_value(value);
        } else if (key == "dl_tx_power") {
            p.dl_tx_power = parse_power_value(value);
        } else if (key == "ul_pilot_power_max") {
            p.ul_pilot_power_max = parse_power_value(value);
        } else if (key == "ul_pilot_power_fixed") {
            p.ul_pilot_power_fixed = parse_power_value(value);
        } else if (key == "noise_psd") {
            p.noise_psd = parse_power_value(value);
        } else if (key == "carrier_freq") {
            p.carrier_freq = parse_double(value, key);
            carrier_set = true;
        } else if (key == "distance") {
            p.distance = parse_double(value, key);
        } else if (key == "pathloss_exp") {
            p.pathloss_exp = parse_double(value, key);
        } else if (key == "rice_factor") {
            p.rice_factor = parse_double(value, key);
        } else if (key == "aoa_deg") {
            p.aoa_deg = parse_double(value, key);
        } else if (key == "antenna_spacing") {
            p.antenna_spacing = parse_double(value, key);
            spacing_set = true;
        } else if (key == "unit_ref_atten") {
            p.unit_ref_atten = parse_double(value, key);
            atten_set = true;
        } else if (key == "delta") {
            const double d = parse_double(value, key);
            config.scenario.delta_g = d;
            config.scenario.delta_phi = d;
        } else if (key == "delta_g") {
            config.scenario.delta_g = parse_double(value, key);
        } else if (key == "delta_phi") {
            config.scenario.delta_phi = parse_double(value, key);
        } else if (key == "api_distribution") {
            if (value == "uniform")
                config.scenario.api_distribution = ApiDistribution::Uniform;
            else if (value == "gaussian")
                config.scenario.api_distribution = ApiDistribution::Gaussian;
            else
                throw std::invalid_argument("key 'api_distribution': expected uniform|gaussian");
        } else if (key == "pwla_csv") {
            config.scenario.pwla = load_pwla_csv(value);
        } else if (key == "linear_eh_efficiency") {
            const double eta = parse_double(value, key);
            if (!(eta > 0.0) || eta > 1.0)
                throw std::invalid_argument(
                    "key 'linear_eh_efficiency': efficiency must be in (0, 1]");
            config.scenario.pwla = linear_pwla(eta);
        } else if (key == "freeze_api") {
            config.scenario.freeze_api = parse_bool(value, key);
        } else if (key == "api_redraw_precoder") {
            config.scenario.redraw_api_for_precoder = parse_bool(value, key);
        } else if (key == "threads") {
            config.scenario.threads = static_cast<int>(parse_u64(value, key));
        } else if (key == "trials") {
            config.trials = parse_u64(value, key);
            config.trials_set = true;
        } else if (key == "seed") {
            config.master_seed = parse_u64(value, key);
            config.seed_set = true;
        } else if (key == "out") {
            config.out_dir = value;
        } else if (key == "preset") {
            config.preset_name = value;
        }
    }

    void finalize() {
        SystemParams& p = config.scenario.params;
        if (n_set)
            p.antenna_gains = Eigen::VectorXd::Ones(p.n_antennas);
        if (carrier_set && !spacing_set)
            p.antenna_spacing = kSpeedOfLight / (2.0 * p.carrier_freq);
        if ((carrier_set || spacing_set) && !atten_set) {
            const double w = p.antenna_spacing / (2.0 * M_PI);
            p.unit_ref_atten = w * w;
        }
        validate(p);
        if (p.n_antennas * p.ce_slot_fixed > p.coherence_time)
            throw std::invalid_argument(
                "key 'ce_slot_fixed': N*tau_c0 exceeds the coherence time");
        if (config.scenario.delta_g < 0.0 || config.scenario.delta_phi < 0.0)
            throw std::invalid_argument("key 'delta': impairment magnitudes must be >= 0");
        // confirm the preset exists before any computation
        preset(config.preset_name);
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

RunConfig make_run_config(const std::vector<std::pair<std::string, std::string>>& file_entries,
                          const std::vector<std::pair<std::string, std::string>>& flag_entries) {
    ConfigBuilder b;
    b.config.scenario = default_scenario();
    for (const auto& [key, value] : file_entries)
        b.apply(key, value);
    for (const auto& [key, value] : flag_entries)
        b.apply(key, value);
    b.finalize();
    return b.config;
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& config) {
    const SystemParams& p = config.scenario.params;
    SweepSpec spec = preset(config.preset_name);
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("preset", config.preset_name);
    kv.emplace_back("n_antennas", std::to_string(p.n_antennas));
    kv.emplace_back("coherence_time", fmt(p.coherence_time));
    kv.emplace_back("ce_slot_fixed", fmt(p.ce_slot_fixed));
    kv.emplace_back("dl_tx_power", fmt(p.dl_tx_power));
    kv.emplace_back("ul_pilot_power_max", fmt(p.ul_pilot_power_max));
    kv.emplace_back("ul_pilot_power_fixed", fmt(p.ul_pilot_power_fixed));
    kv.emplace_back("noise_psd", fmt(p.noise_psd));
    kv.emplace_back("carrier_freq", fmt(p.carrier_freq));
    kv.emplace_back("distance", fmt(p.distance));
    kv.emplace_back("pathloss_exp", fmt(p.pathloss_exp));
    kv.emplace_back("rice_factor", fmt(p.rice_factor));
    kv.emplace_back("aoa_deg", fmt(p.aoa_deg));
    kv.emplace_back("antenna_spacing", fmt(p.antenna_spacing));
    kv.emplace_back("unit_ref_atten", fmt(p.unit_ref_atten));
    kv.emplace_back("delta_g", fmt(config.scenario.delta_g));
    kv.emplace_back("delta_phi", fmt(config.scenario.delta_phi));
    kv.emplace_back("api_distribution",
                    config.scenario.api_distribution == ApiDistribution::Uniform ? "uniform"
                                                                                 : "gaussian");
    kv.emplace_back("freeze_api", config.scenario.freeze_api ? "1" : "0");
    kv.emplace_back("api_redraw_precoder", config.scenario.redraw_api_for_precoder ? "1" : "0");
    kv.emplace_back("pwla_segments", std::to_string(config.scenario.pwla.segments()));
    kv.emplace_back("trials",
                    std::to_string(config.trials_set ? config.trials : spec.trials));
    kv.emplace_back("seed",
                    std::to_string(config.seed_set ? config.master_seed : spec.master_seed));
    return kv;
}

int execute_run(const RunConfig& config) {
    SweepSpec spec = preset(config.preset_name);
    if (config.trials_set)
        spec.trials = config.trials;
    if (config.seed_set)
        spec.master_seed = config.master_seed;
    const std::vector<CsvRow> rows = run_preset(spec, config.scenario);
    std::filesystem::create_directories(config.out_dir);
    const std::string base = config.out_dir + "/" + config.preset_name;
    write_csv(base + ".csv", rows);
    write_meta(base + ".meta", describe(config));
    return 0;
}

} // namespace ebfsim
