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

#include "ebfsim/experiments.hpp"

#include "ebfsim/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace ebfsim {

ScenarioConfig default_scenario() {
    ScenarioConfig sc;
    sc.params = default_params();
    sc.pwla = default_pwla();
    return sc;
}

ScenarioConfig with_value(const ScenarioConfig& base, SweepVariable variable, double value) {
    ScenarioConfig sc = base;
    switch (variable) {
    case SweepVariable::None:
        break;
    case SweepVariable::N: {
        const int n = static_cast<int>(value);
        sc.params.n_antennas = n;
        sc.params.antenna_gains = Eigen::VectorXd::Ones(n);
        break;
    }
    case SweepVariable::K:
        sc.params.rice_factor = value;
        break;
    case SweepVariable::Distance:
        sc.params.distance = value;
        break;
    case SweepVariable::Delta:
        sc.delta_g = value;
        sc.delta_phi = value;
        break;
    case SweepVariable::DeltaGPhiPair:
        sc.delta_g = value;
        break;
    case SweepVariable::PilotPower:
        sc.params.ul_pilot_power_fixed = value;
        break;
    case SweepVariable::SlotTime:
        sc.params.ce_slot_fixed = value;
        break;
    }
    return sc;
}

namespace {

bool needs_estimate(PrecoderKind kind) {
    return kind == PrecoderKind::HybridMrt || kind == PrecoderKind::HybridMrtNoApiOnPrecoder ||
           kind == PrecoderKind::SinglePs;
}

TrialRecord trial_kernel(const TrialPoint& point, const ChannelStats& stats,
                         std::uint64_t master_seed, std::uint64_t trial_index) {
    const ScenarioConfig& sc = point.scenario;
    const SystemParams& p = sc.params;

    Philox ch_rng(master_seed, trial_index, kRngChannel);
    const ChannelRealization h = sample_channel(stats, ch_rng);

    Eigen::RowVectorXcd z;
    if (point.arch == Architecture::Hybrid) {
        Philox api_rng(master_seed, sc.freeze_api ? 0 : trial_index, kRngApi);
        const ApiModel api = draw_api(p, sc.delta_g, sc.delta_phi, sc.api_distribution, api_rng);
        if (needs_estimate(point.kind)) {
            Philox noise_rng(master_seed, trial_index, kRngNoise);
            const LseResult ce = run_ce(h, api, point.p_c, point.tau_c, p, noise_rng);
            if (sc.redraw_api_for_precoder && point.kind == PrecoderKind::HybridMrt) {
                Philox api2_rng(master_seed, sc.freeze_api ? 0 : trial_index, kRngApiPrecoder);
                const ApiModel api2 =
                    draw_api(p, sc.delta_g, sc.delta_phi, sc.api_distribution, api2_rng);
                z = make_precoder(point.kind, h, ce.h_hat, api2);
            } else {
                z = make_precoder(point.kind, h, ce.h_hat, api);
            }
        } else {
            z = make_precoder(point.kind, h, Eigen::VectorXcd(), api);
        }
    } else {
        if (point.kind == PrecoderKind::HybridMrt)
            throw std::invalid_argument("simulate_one_trial: digital runs have no analog stage");
        if (needs_estimate(point.kind)) {
            const double ce_energy = point.p_c * point.tau_c;
            if (!(ce_energy > 0.0))
                throw std::invalid_argument("simulate_one_trial: digital training needs energy");
            Philox noise_rng(master_seed, trial_index, kRngNoise);
            Eigen::VectorXcd h_hat(h.h.size());
            const double scale = 1.0 / std::sqrt(ce_energy);
            for (Eigen::Index i = 0; i < h_hat.size(); ++i)
                h_hat[i] = h.h[i] + scale * noise_rng.complex_normal(p.noise_psd);
            const ApiModel none{};
            z = make_precoder(point.kind, h, h_hat, none);
        } else {
            const ApiModel none{};
            z = make_precoder(point.kind, h, Eigen::VectorXcd(), none);
        }
    }

    const double mult = point.arch == Architecture::Hybrid ? p.n_antennas : 1.0;
    TrialRecord rec;
    rec.seed_index = trial_index;
    rec.precoder_kind = point.kind;
    rec.p_c = point.p_c;
    rec.tau_c = point.tau_c;
    rec.received_power = received_power(z, h, p.dl_tx_power);
    rec.harvested_power = harvest(sc.pwla, rec.received_power);
    rec.stored_energy = (p.coherence_time - mult * point.tau_c) * rec.harvested_power -
                        mult * point.p_c * point.tau_c;
    return rec;
}

void parallel_chunks(std::uint64_t n, int threads,
                     const std::function<void(std::uint64_t, std::uint64_t)>& body) {
    unsigned int workers = threads > 0 ? static_cast<unsigned int>(threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned int>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(n, 1)));
    if (workers <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (unsigned int w = 0; w < workers; ++w) {
        const std::uint64_t begin = w * chunk;
        const std::uint64_t end = std::min(n, begin + chunk);
        if (begin >= end)
            break;
        pool.emplace_back([&, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

double pairwise_sum_span(const double* x, std::size_t n) {
    if (n <= 32) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += x[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_span(x, half) + pairwise_sum_span(x + half, n - half);
}

MetricSummary summarize(const std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    MetricSummary s;
    s.mean = pairwise_sum_span(x.data(), x.size()) / n;
    std::vector<double> sq(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - s.mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum_span(sq.data(), sq.size()) / n;
    s.std_error = std::sqrt(var / n);
    return s;
}

} // namespace

TrialRecord simulate_one_trial(const TrialPoint& point, std::uint64_t master_seed,
                               std::uint64_t trial_index) {
    const ChannelStats stats = build_channel_stats(point.scenario.params);
    return trial_kernel(point, stats, master_seed, trial_index);
}

std::vector<TrialRecord> run_trial_records(const TrialPoint& point, std::uint64_t trials,
                                           std::uint64_t master_seed) {
    if (trials < 1)
        throw std::invalid_argument("run_trial_records: trials must be >= 1");
    const ChannelStats stats = build_channel_stats(point.scenario.params);
    std::vector<TrialRecord> out(trials);
    parallel_chunks(trials, point.scenario.threads, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t t = begin; t < end; ++t)
            out[t] = trial_kernel(point, stats, master_seed, t);
    });
    return out;
}

TrialSummary run_trials(const TrialPoint& point, std::uint64_t trials, std::uint64_t master_seed) {
    const std::vector<TrialRecord> records = run_trial_records(point, trials, master_seed);
    std::vector<double> pr(records.size()), ph(records.size()), es(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        pr[i] = records[i].received_power;
        ph[i] = records[i].harvested_power;
        es[i] = records[i].stored_energy;
    }
    TrialSummary s;
    s.received_power = summarize(pr);
    s.harvested_power = summarize(ph);
    s.stored_energy = summarize(es);
    s.trials = trials;
    return s;
}

std::vector<double> collect_estimate_norm_sq(const ScenarioConfig& scenario, double p_c,
                                             double tau_c, std::uint64_t trials,
                                             std::uint64_t master_seed) {
    const ChannelStats stats = build_channel_stats(scenario.params);
    std::vector<double> out(trials);
    parallel_chunks(trials, scenario.threads, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t t = begin; t < end; ++t) {
            Philox api_rng(master_seed, scenario.freeze_api ? 0 : t, kRngApi);
            const ApiModel api = draw_api(scenario.params, scenario.delta_g, scenario.delta_phi,
                                          scenario.api_distribution, api_rng);
            Philox ch_rng(master_seed, t, kRngChannel);
            const ChannelRealization h = sample_channel(stats, ch_rng);
            Philox noise_rng(master_seed, t, kRngNoise);
            const LseResult ce = run_ce(h, api, p_c, tau_c, scenario.params, noise_rng);
            out[t] = ce.h_hat.squaredNorm();
        }
    });
    return out;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.size() < 100)
        throw std::invalid_argument("ks_distance: need at least 100 samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        ks = std::max(ks, std::fabs(f - static_cast<double>(i) / n));
        ks = std::max(ks, std::fabs(static_cast<double>(i + 1) / n - f));
    }
    return ks;
}

double pairwise_sum(const std::vector<double>& x) {
    return pairwise_sum_span(x.data(), x.size());
}

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i)
        v[i] = lo + (hi - lo) * i / (count - 1);
    return v;
}

const std::vector<double> kNGrid = {10, 15, 20, 25, 30, 35, 40, 45, 50};
const std::vector<double> kKGrid = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
const std::vector<double> kDGrid = {5, 7.5, 10, 12.5, 15, 17.5, 20, 22.5, 25};
const std::vector<double> kDGridCoarse = {5, 10, 15, 20, 25};
const std::vector<double> kDeltaGrid = {0, 0.02, 0.04, 0.065, 0.08, 0.10, 0.12, 0.14, 0.16};
const std::vector<double> kDeltaGridCoarse = {0, 0.04, 0.065, 0.10, 0.13, 0.16};

struct SubSweep {
    const char* tag;
    SweepVariable variable;
    const std::vector<double>* grid;
    double max_value;
};

const SubSweep kFourSweeps[] = {
    {"N", SweepVariable::N, &kNGrid, 50.0},
    {"K", SweepVariable::K, &kKGrid, 10.0},
    {"d", SweepVariable::Distance, &kDGrid, 25.0},
    {"delta", SweepVariable::Delta, &kDeltaGrid, 0.16},
};

} // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "validation_pdf_cdf", "approx_tightness",      "precoder_api_gap", "sweep_N",
        "sweep_K",            "sweep_d",               "sweep_delta",      "gaussian_vs_uniform",
        "digital_vs_hybrid",  "optimal_pa_ta_insight", "normalized_comparison",
        "amp_phase_grid",     "joint_alloc",
    };
    return names;
}

SweepSpec preset(const std::string& name) {
    SweepSpec s;
    s.name = name;
    s.trials = 10000;
    s.master_seed = 1;
    if (name == "validation_pdf_cdf") {
        s.variable = SweepVariable::None;
        s.values = {0.0};
        s.modes = {"ks_norm_sq", "pdf_model", "pdf_sim", "cdf_model", "cdf_sim"};
    } else if (name == "approx_tightness") {
        s.variable = SweepVariable::Distance;
        s.values = kDGridCoarse;
        s.modes = {"pr_mc", "pr_closed", "es_mc", "es_closed"};
    } else if (name == "precoder_api_gap") {
        s.variable = SweepVariable::Distance;
        s.values = kDGridCoarse;
        s.modes = {"es_closed", "es_mc_ideal_precoder", "es_mc_api_precoder"};
    } else if (name == "sweep_N") {
        s.variable = SweepVariable::N;
        s.values = kNGrid;
        s.modes = {"es_id", "es_joint", "es_opt_pa", "es_fixed",
                   "es_mc_joint", "es_mc_opt_pa", "es_mc_fixed"};
    } else if (name == "sweep_K") {
        s.variable = SweepVariable::K;
        s.values = kKGrid;
        s.modes = {"es_id", "es_joint", "es_opt_pa", "es_fixed",
                   "es_mc_joint", "es_mc_opt_pa", "es_mc_fixed"};
    } else if (name == "sweep_d") {
        s.variable = SweepVariable::Distance;
        s.values = kDGrid;
        s.modes = {"es_id", "es_joint", "es_opt_pa", "es_fixed",
                   "es_mc_joint", "es_mc_opt_pa", "es_mc_fixed"};
    } else if (name == "sweep_delta") {
        s.variable = SweepVariable::Delta;
        s.values = kDeltaGrid;
        s.modes = {"es_id", "es_joint", "es_opt_pa", "es_fixed",
                   "es_mc_joint", "es_mc_opt_pa", "es_mc_fixed"};
    } else if (name == "gaussian_vs_uniform") {
        s.variable = SweepVariable::Delta;
        s.values = kDeltaGridCoarse;
        s.modes = {"es_mc_uniform", "es_mc_gaussian"};
    } else if (name == "digital_vs_hybrid") {
        s.variable = SweepVariable::None;
        s.values = linspace(0.1, 1.0, 10);
        s.modes = {"es_mc_hybrid_joint[N|K|d|delta]", "es_mc_digital_joint[N|K|d|delta]"};
    } else if (name == "optimal_pa_ta_insight") {
        s.variable = SweepVariable::None;
        s.values = linspace(0.1, 1.0, 10);
        s.modes = {"pc_opt[N|K|d|delta]", "tauc_joint[N|K|d|delta]"};
    } else if (name == "normalized_comparison") {
        s.variable = SweepVariable::None;
        s.values = linspace(0.1, 1.0, 10);
        s.modes = {"ratio_joint[N|K|d|delta]", "ratio_opt_pa[N|K|d|delta]",
                   "ratio_opt_ta[N|K|d|delta]", "ratio_fixed[N|K|d|delta]",
                   "ratio_iso[N|K|d|delta]"};
    } else if (name == "amp_phase_grid") {
        s.variable = SweepVariable::DeltaGPhiPair;
        s.values = kDeltaGrid;
        s.modes = {"es_mc[dphi=...]"};
    } else if (name == "joint_alloc") {
        s.variable = SweepVariable::None;
        s.values = {0.0};
        s.modes = {"pc_opt", "tauc_opt", "es_pred", "segment"};
    } else {
        throw std::invalid_argument("preset: unknown preset '" + name + "'");
    }
    return s;
}

namespace {

CsvRow make_row(double value, std::string mode, double mean, double se, std::uint64_t trials) {
    CsvRow r;
    r.value = value;
    r.mode = std::move(mode);
    r.mean = mean;
    r.std_error = se;
    r.trials = trials;
    return r;
}

TrialSummary mc_summary(const ScenarioConfig& sc, PrecoderKind kind, Architecture arch, double p_c,
                        double tau_c, std::uint64_t trials, std::uint64_t seed) {
    TrialPoint pt;
    pt.scenario = sc;
    pt.kind = kind;
    pt.arch = arch;
    pt.p_c = p_c;
    pt.tau_c = tau_c;
    return run_trials(pt, trials, seed);
}

double ideal_stored_closed(const ScenarioConfig& sc, const ChannelStats& stats) {
    const double mu = mean_received_power_ideal(sc.params, stats);
    return sc.params.coherence_time * mean_harvested_power_approx(sc.pwla, mu);
}

double iso_stored_closed(const ScenarioConfig& sc, const ChannelStats& stats) {
    const double mu = mean_received_power_isotropic(sc.params, stats);
    return sc.params.coherence_time * mean_harvested_power_approx(sc.pwla, mu);
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void run_standard_sweep(const SweepSpec& spec, const ScenarioConfig& base,
                        std::vector<CsvRow>& rows) {
    for (double v : spec.values) {
        const ScenarioConfig sc = with_value(base, spec.variable, v);
        const ChannelStats stats = build_channel_stats(sc.params);
        const SystemParams& p = sc.params;
        const AllocationResult joint = optimal_joint(p, stats, sc.pwla);
        const AllocationResult opt_pa = optimal_power(p, stats, sc.pwla, p.ce_slot_fixed);
        const double es_fixed = stored_energy_objective(p, stats, sc.pwla, p.ul_pilot_power_fixed,
                                                        p.ce_slot_fixed);
        rows.push_back(make_row(v, "es_id", ideal_stored_closed(sc, stats), 0.0, 0));
        rows.push_back(make_row(v, "es_joint", joint.predicted_stored_energy, 0.0, 0));
        rows.push_back(make_row(v, "es_opt_pa", opt_pa.predicted_stored_energy, 0.0, 0));
        rows.push_back(make_row(v, "es_fixed", es_fixed, 0.0, 0));
        const TrialSummary mc_joint = mc_summary(sc, PrecoderKind::HybridMrt, Architecture::Hybrid,
                                                 joint.p_c_opt, joint.tau_c_opt, spec.trials,
                                                 spec.master_seed);
        const TrialSummary mc_pa = mc_summary(sc, PrecoderKind::HybridMrt, Architecture::Hybrid,
                                              opt_pa.p_c_opt, opt_pa.tau_c_opt, spec.trials,
                                              spec.master_seed);
        const TrialSummary mc_fixed = mc_summary(sc, PrecoderKind::HybridMrt, Architecture::Hybrid,
                                                 p.ul_pilot_power_fixed, p.ce_slot_fixed,
                                                 spec.trials, spec.master_seed);
        rows.push_back(make_row(v, "es_mc_joint", mc_joint.stored_energy.mean,
                                mc_joint.stored_energy.std_error, spec.trials));
        rows.push_back(make_row(v, "es_mc_opt_pa", mc_pa.stored_energy.mean,
                                mc_pa.stored_energy.std_error, spec.trials));
        rows.push_back(make_row(v, "es_mc_fixed", mc_fixed.stored_energy.mean,
                                mc_fixed.stored_energy.std_error, spec.trials));
    }
}

} // namespace

std::vector<CsvRow> run_preset(const SweepSpec& spec, const ScenarioConfig& base) {
    std::vector<CsvRow> rows;
    const SystemParams& bp = base.params;

    if (spec.name == "validation_pdf_cdf") {
        const std::vector<double> samples =
            collect_estimate_norm_sq(base, bp.ul_pilot_power_fixed, bp.ce_slot_fixed, spec.trials,
                                     spec.master_seed);
        const ChannelStats stats = build_channel_stats(bp);
        const ApiModel api0 = nominal_api(bp, base.delta_g, base.delta_phi);
        const LseStats ls = lse_stats(stats, api0, bp.ul_pilot_power_fixed, bp.ce_slot_fixed, bp);
        const NoncentralChiSquared handle = norm_sq_distribution(ls);
        const double scale = 0.5 * ls.sigma2_hhat; // norm^2 = scale * chi-square variate
        const auto cdf = [&](double x) { return handle.cdf(x / scale); };
        rows.push_back(make_row(0.0, "ks_norm_sq", ks_distance(samples, cdf), 0.0, spec.trials));
        const double hi = scale * (handle.mean() + 5.0 * std::sqrt(2.0 * handle.dof + 4.0 * handle.lambda));
        const int bins = 48;
        std::vector<double> sorted = samples;
        std::sort(sorted.begin(), sorted.end());
        for (int b = 0; b < bins; ++b) {
            const double lo = hi * b / bins;
            const double up = hi * (b + 1) / bins;
            const double mid = 0.5 * (lo + up);
            rows.push_back(make_row(mid, "pdf_model", handle.pdf(mid / scale) / scale, 0.0, 0));
            const auto lo_it = std::lower_bound(sorted.begin(), sorted.end(), lo);
            const auto up_it = std::lower_bound(sorted.begin(), sorted.end(), up);
            const double frac = static_cast<double>(up_it - lo_it) / sorted.size();
            rows.push_back(make_row(mid, "pdf_sim", frac / (up - lo), 0.0, spec.trials));
            rows.push_back(make_row(up, "cdf_model", cdf(up), 0.0, 0));
            const double ecdf = static_cast<double>(
                                    std::upper_bound(sorted.begin(), sorted.end(), up) -
                                    sorted.begin()) /
                                sorted.size();
            rows.push_back(make_row(up, "cdf_sim", ecdf, 0.0, spec.trials));
        }
        return rows;
    }

    if (spec.name == "approx_tightness" || spec.name == "precoder_api_gap") {
        for (double d : spec.values) {
            const ScenarioConfig sc = with_value(base, SweepVariable::Distance, d);
            const ChannelStats stats = build_channel_stats(sc.params);
            const SystemParams& p = sc.params;
            const double pr_closed =
                mean_received_power_approx(p, stats, p.ul_pilot_power_fixed, p.ce_slot_fixed);
            const double es_closed = stored_energy_objective(p, stats, sc.pwla,
                                                             p.ul_pilot_power_fixed,
                                                             p.ce_slot_fixed);
            const TrialSummary ideal_precoder = mc_summary(
                sc, PrecoderKind::HybridMrtNoApiOnPrecoder, Architecture::Hybrid,
                p.ul_pilot_power_fixed, p.ce_slot_fixed, spec.trials, spec.master_seed);
            if (spec.name == "approx_tightness") {
                rows.push_back(make_row(d, "pr_mc", ideal_precoder.received_power.mean,
                                        ideal_precoder.received_power.std_error, spec.trials));
                rows.push_back(make_row(d, "pr_closed", pr_closed, 0.0, 0));
                rows.push_back(make_row(d, "es_mc", ideal_precoder.stored_energy.mean,
                                        ideal_precoder.stored_energy.std_error, spec.trials));
                rows.push_back(make_row(d, "es_closed", es_closed, 0.0, 0));
            } else {
                const TrialSummary api_precoder = mc_summary(
                    sc, PrecoderKind::HybridMrt, Architecture::Hybrid, p.ul_pilot_power_fixed,
                    p.ce_slot_fixed, spec.trials, spec.master_seed);
                rows.push_back(make_row(d, "es_closed", es_closed, 0.0, 0));
                rows.push_back(make_row(d, "es_mc_ideal_precoder", ideal_precoder.stored_energy.mean,
                                        ideal_precoder.stored_energy.std_error, spec.trials));
                rows.push_back(make_row(d, "es_mc_api_precoder", api_precoder.stored_energy.mean,
                                        api_precoder.stored_energy.std_error, spec.trials));
            }
        }
        return rows;
    }

    if (spec.name == "sweep_N" || spec.name == "sweep_K" || spec.name == "sweep_d" ||
        spec.name == "sweep_delta") {
        run_standard_sweep(spec, base, rows);
        return rows;
    }

    if (spec.name == "gaussian_vs_uniform") {
        for (double delta : spec.values) {
            ScenarioConfig sc = with_value(base, SweepVariable::Delta, delta);
            const ChannelStats stats = build_channel_stats(sc.params);
            const AllocationResult joint = optimal_joint(sc.params, stats, sc.pwla);
            for (ApiDistribution dist : {ApiDistribution::Uniform, ApiDistribution::Gaussian}) {
                sc.api_distribution = dist;
                const TrialSummary mc =
                    mc_summary(sc, PrecoderKind::HybridMrt, Architecture::Hybrid, joint.p_c_opt,
                               joint.tau_c_opt, spec.trials, spec.master_seed);
                rows.push_back(make_row(delta,
                                        dist == ApiDistribution::Uniform ? "es_mc_uniform"
                                                                         : "es_mc_gaussian",
                                        mc.stored_energy.mean, mc.stored_energy.std_error,
                                        spec.trials));
            }
        }
        return rows;
    }

    if (spec.name == "digital_vs_hybrid") {
        for (const SubSweep& sweep : kFourSweeps) {
            for (double v : *sweep.grid) {
                const ScenarioConfig sc = with_value(base, sweep.variable, v);
                const ChannelStats stats = build_channel_stats(sc.params);
                const AllocationResult hj = optimal_joint(sc.params, stats, sc.pwla);
                const AllocationResult dj =
                    optimal_digital(sc.params, stats, sc.pwla, AllocationMode::DigitalJoint);
                const TrialSummary mh =
                    mc_summary(sc, PrecoderKind::HybridMrt, Architecture::Hybrid, hj.p_c_opt,
                               hj.tau_c_opt, spec.trials, spec.master_seed);
                const TrialSummary md = mc_summary(sc, PrecoderKind::HybridMrtNoApiOnPrecoder,
                                                   Architecture::Digital, dj.p_c_opt, dj.tau_c_opt,
                                                   spec.trials, spec.master_seed);
                const double norm = v / sweep.max_value;
                rows.push_back(make_row(norm, std::string("es_mc_hybrid_joint[") + sweep.tag + "]",
                                        mh.stored_energy.mean, mh.stored_energy.std_error,
                                        spec.trials));
                rows.push_back(make_row(norm, std::string("es_mc_digital_joint[") + sweep.tag + "]",
                                        md.stored_energy.mean, md.stored_energy.std_error,
                                        spec.trials));
            }
        }
        return rows;
    }

    if (spec.name == "optimal_pa_ta_insight") {
        for (const SubSweep& sweep : kFourSweeps) {
            for (double v : *sweep.grid) {
                const ScenarioConfig sc = with_value(base, sweep.variable, v);
                const ChannelStats stats = build_channel_stats(sc.params);
                const AllocationResult pa =
                    optimal_power(sc.params, stats, sc.pwla, sc.params.ce_slot_fixed);
                const AllocationResult joint = optimal_joint(sc.params, stats, sc.pwla);
                const double norm = v / sweep.max_value;
                rows.push_back(make_row(norm, std::string("pc_opt[") + sweep.tag + "]",
                                        pa.p_c_opt, 0.0, 0));
                rows.push_back(make_row(norm, std::string("tauc_joint[") + sweep.tag + "]",
                                        joint.tau_c_opt, 0.0, 0));
            }
        }
        return rows;
    }

    if (spec.name == "normalized_comparison") {
        for (const SubSweep& sweep : kFourSweeps) {
            for (double v : *sweep.grid) {
                const ScenarioConfig sc = with_value(base, sweep.variable, v);
                const ChannelStats stats = build_channel_stats(sc.params);
                const SystemParams& p = sc.params;
                const double ideal = ideal_stored_closed(sc, stats);
                const AllocationResult joint = optimal_joint(p, stats, sc.pwla);
                const AllocationResult pa = optimal_power(p, stats, sc.pwla, p.ce_slot_fixed);
                const AllocationResult ta = optimal_time(p, stats, sc.pwla, p.ul_pilot_power_fixed);
                const double norm = v / sweep.max_value;
                const auto emit = [&](const char* label, double pc, double tc) {
                    const TrialSummary mc = mc_summary(sc, PrecoderKind::HybridMrt,
                                                       Architecture::Hybrid, pc, tc, spec.trials,
                                                       spec.master_seed);
                    rows.push_back(make_row(norm, std::string(label) + "[" + sweep.tag + "]",
                                            mc.stored_energy.mean / ideal,
                                            mc.stored_energy.std_error / ideal, spec.trials));
                };
                emit("ratio_joint", joint.p_c_opt, joint.tau_c_opt);
                emit("ratio_opt_pa", pa.p_c_opt, pa.tau_c_opt);
                emit("ratio_opt_ta", ta.p_c_opt, ta.tau_c_opt);
                emit("ratio_fixed", p.ul_pilot_power_fixed, p.ce_slot_fixed);
                rows.push_back(make_row(norm, std::string("ratio_iso[") + sweep.tag + "]",
                                        iso_stored_closed(sc, stats) / ideal, 0.0, 0));
            }
        }
        return rows;
    }

    if (spec.name == "amp_phase_grid") {
        for (double dg : spec.values) {
            for (double dphi : spec.values) {
                ScenarioConfig sc = base;
                sc.delta_g = dg;
                sc.delta_phi = dphi;
                const ChannelStats stats = build_channel_stats(sc.params);
                const AllocationResult joint = optimal_joint(sc.params, stats, sc.pwla);
                const TrialSummary mc =
                    mc_summary(sc, PrecoderKind::HybridMrt, Architecture::Hybrid, joint.p_c_opt,
                               joint.tau_c_opt, spec.trials, spec.master_seed);
                char mode[64];
                std::snprintf(mode, sizeof(mode), "es_mc[dphi=%.3f]", dphi);
                rows.push_back(make_row(dg, mode, mc.stored_energy.mean,
                                        mc.stored_energy.std_error, spec.trials));
            }
        }
        return rows;
    }

    if (spec.name == "joint_alloc") {
        const ChannelStats stats = build_channel_stats(bp);
        const AllocationResult joint = optimal_joint(bp, stats, base.pwla);
        rows.push_back(make_row(0.0, "pc_opt", joint.p_c_opt, 0.0, 0));
        rows.push_back(make_row(0.0, "tauc_opt", joint.tau_c_opt, 0.0, 0));
        rows.push_back(make_row(0.0, "es_pred", joint.predicted_stored_energy, 0.0, 0));
        rows.push_back(make_row(0.0, "segment", joint.segment_index, 0.0, 0));
        return rows;
    }

    throw std::invalid_argument("run_preset: unknown preset '" + spec.name + "'");
}

void write_csv(const std::string& path, const std::vector<CsvRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_csv: cannot open " + path);
    out << "value,mode,mean,stderr,trials\n";
    for (const CsvRow& r : rows)
        out << fmt_double(r.value) << ',' << r.mode << ',' << fmt_double(r.mean) << ','
            << fmt_double(r.std_error) << ',' << r.trials << '\n';
    if (!out)
        throw std::runtime_error("write_csv: write failed for " + path);
}

void write_meta(const std::string& path,
                const std::vector<std::pair<std::string, std::string>>& entries) {
    std::vector<std::pair<std::string, std::string>> sorted = entries;
    std::sort(sorted.begin(), sorted.end());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_meta: cannot open " + path);
    for (const auto& [key, value] : sorted)
        out << key << '=' << value << '\n';
    if (!out)
        throw std::runtime_error("write_meta: write failed for " + path);
}

} // namespace ebfsim
