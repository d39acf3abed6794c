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

#ifndef EBFSIM_EXPERIMENTS_HPP
#define EBFSIM_EXPERIMENTS_HPP

#include "ebfsim/beamform.hpp"
#include "ebfsim/harvest.hpp"
#include "ebfsim/optimize.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace ebfsim {

// Per-trial ledger. stored_energy always satisfies
//   stored = rfet_time * harvested_power - ce_cost
// with the architecture's timing, so summaries can be recomputed from rows.
struct TrialRecord {
    std::uint64_t seed_index = 0;
    double received_power = 0.0;
    double harvested_power = 0.0;
    double stored_energy = 0.0;
    PrecoderKind precoder_kind = PrecoderKind::HybridMrt;
    double p_c = 0.0;
    double tau_c = 0.0;
};

enum class SweepVariable { None, N, K, Distance, Delta, DeltaGPhiPair, PilotPower, SlotTime };

struct SweepSpec {
    std::string name;
    SweepVariable variable = SweepVariable::None;
    std::vector<double> values;
    std::vector<std::string> modes;
    std::uint64_t trials = 10000;
    std::uint64_t master_seed = 1;
};

// Everything a trial needs besides the allocation: scenario constants,
// harvest curve, impairment knobs, and scheduling options.
struct ScenarioConfig {
    SystemParams params;
    PwlaModel pwla;
    double delta_g = 0.065;
    double delta_phi = 0.065;
    ApiDistribution api_distribution = ApiDistribution::Uniform;
    bool freeze_api = false;             // share one impairment draw across trials
    bool redraw_api_for_precoder = false; // independent draw for the precoding stage
    int threads = 0;                      // 0 = hardware concurrency
};

ScenarioConfig default_scenario();

// Applies one sweep value to a scenario (rebuilding dependent fields).
ScenarioConfig with_value(const ScenarioConfig& base, SweepVariable variable, double value);

struct TrialPoint {
    ScenarioConfig scenario;
    PrecoderKind kind = PrecoderKind::HybridMrt;
    Architecture arch = Architecture::Hybrid;
    double p_c = 0.0;
    double tau_c = 0.0;
};

struct MetricSummary {
    double mean = 0.0;
    double std_error = 0.0;
};

struct TrialSummary {
    MetricSummary received_power;
    MetricSummary harvested_power;
    MetricSummary stored_energy;
    std::uint64_t trials = 0;
};

// One full trial: impairment draw, channel draw, training, precoding,
// harvest, energy ledger. Deterministic in (master_seed, trial_index).
TrialRecord simulate_one_trial(const TrialPoint& point, std::uint64_t master_seed,
                               std::uint64_t trial_index);

// Runs trials in parallel and reduces with a fixed pairwise tree, so the
// summary is bit-identical for any worker count.
TrialSummary run_trials(const TrialPoint& point, std::uint64_t trials, std::uint64_t master_seed);

std::vector<TrialRecord> run_trial_records(const TrialPoint& point, std::uint64_t trials,
                                           std::uint64_t master_seed);

// Squared norms of the channel estimate across trials (distribution checks).
std::vector<double> collect_estimate_norm_sq(const ScenarioConfig& scenario, double p_c,
                                             double tau_c, std::uint64_t trials,
                                             std::uint64_t master_seed);

// Kolmogorov-Smirnov statistic between a sample and a model CDF.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

// Deterministic pairwise summation (order-independent reduction helper).
double pairwise_sum(const std::vector<double>& x);

const std::vector<std::string>& preset_names();
SweepSpec preset(const std::string& name);

struct CsvRow {
    double value = 0.0;
    std::string mode;
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

std::vector<CsvRow> run_preset(const SweepSpec& spec, const ScenarioConfig& base);

void write_csv(const std::string& path, const std::vector<CsvRow>& rows);
void write_meta(const std::string& path,
                const std::vector<std::pair<std::string, std::string>>& entries);

} // namespace ebfsim

#endif
