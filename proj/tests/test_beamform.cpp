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

#include "ebfsim/beamform.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace ebfsim;

TEST_SUITE_BEGIN("beamform");

TEST_CASE("precoder construction") {
    const SystemParams p = default_params();
    const ChannelStats stats = build_channel_stats(p);
    Philox ch(40, 0, kRngChannel), api_rng(40, 0, kRngApi), noise(40, 0, kRngNoise);
    const ChannelRealization h = sample_channel(stats, ch);
    const ApiModel api = draw_api(p, 0.065, ApiDistribution::Uniform, api_rng);
    const LseResult ce = run_ce(h, api, p.ul_pilot_power_fixed, p.ce_slot_fixed, p, noise);

    SUBCASE("matched filter on the true channel") {
        const Eigen::RowVectorXcd z = make_precoder(PrecoderKind::PerfectCsi, h, {}, api);
        CHECK(z.norm() == doctest::Approx(1.0).epsilon(1e-12));
        const std::complex<double> y = (z * h.h)(0);
        CHECK(y.real() == doctest::Approx(h.h.norm()).epsilon(1e-12));
        CHECK(std::fabs(y.imag()) < 1e-12 * h.h.norm());
    }

    SUBCASE("estimate-based matched filter without analog distortion") {
        const Eigen::RowVectorXcd z =
            make_precoder(PrecoderKind::HybridMrtNoApiOnPrecoder, h, ce.h_hat, api);
        const Eigen::RowVectorXcd want = ce.h_hat.adjoint() / ce.h_hat.norm();
        CHECK((z - want).norm() < 1e-14);
    }

    SUBCASE("zero severity makes the analog stage transparent") {
        const ApiModel ideal = nominal_api(p, 0.0);
        const Eigen::RowVectorXcd z = make_precoder(PrecoderKind::HybridMrt, h, ce.h_hat, ideal);
        const Eigen::RowVectorXcd want = ce.h_hat.adjoint() / ce.h_hat.norm();
        CHECK((z - want).norm() < 1e-12);
    }

    SUBCASE("phase-only precoder radiates unit total power when unimpaired") {
        const ApiModel ideal = nominal_api(p, 0.0);
        const Eigen::RowVectorXcd z = make_precoder(PrecoderKind::SinglePs, h, ce.h_hat, ideal);
        CHECK(z.norm() == doctest::Approx(1.0).epsilon(1e-12));
        const double want_mod = 1.0 / std::sqrt(static_cast<double>(p.n_antennas));
        for (int i = 0; i < p.n_antennas; ++i)
            CHECK(std::abs(z[i]) == doctest::Approx(want_mod).epsilon(1e-12));
        // with impairments the lone shifter's amplitude error shows up
        const Eigen::RowVectorXcd zi = make_precoder(PrecoderKind::SinglePs, h, ce.h_hat, api);
        for (int i = 0; i < p.n_antennas; ++i)
            CHECK(std::abs(zi[i]) == doctest::Approx(api.g1[i] * want_mod).epsilon(1e-12));
    }

    SUBCASE("distorted matched filter keeps the amplitude loss") {
        const Eigen::RowVectorXcd z = make_precoder(PrecoderKind::HybridMrt, h, ce.h_hat, api);
        CHECK(z.norm() < 1.0); // gains sit below one, no renormalization
        CHECK(z.norm() > 0.8);
    }

    SUBCASE("zero-norm inputs are rejected") {
        ChannelRealization zero;
        zero.h = Eigen::VectorXcd::Zero(p.n_antennas);
        CHECK_THROWS_AS(make_precoder(PrecoderKind::PerfectCsi, zero, {}, api),
                        std::domain_error);
        CHECK_THROWS_AS(
            make_precoder(PrecoderKind::HybridMrt, h, Eigen::VectorXcd::Zero(p.n_antennas), api),
            std::domain_error);
    }
}

TEST_CASE("received power") {
    const SystemParams p = default_params();
    const ChannelStats stats = build_channel_stats(p);
    const ApiModel api = nominal_api(p, 0.0);

    ChannelRealization zero;
    zero.h = Eigen::VectorXcd::Zero(p.n_antennas);
    const Eigen::RowVectorXcd iso = make_precoder(PrecoderKind::Isotropic, zero, {}, api);
    CHECK(received_power(iso, zero, p.dl_tx_power) == 0.0);

    Philox ch(41, 0, kRngChannel);
    const ChannelRealization h = sample_channel(stats, ch);
    const Eigen::RowVectorXcd mrt = make_precoder(PrecoderKind::PerfectCsi, h, {}, api);
    CHECK(received_power(mrt, h, p.dl_tx_power) ==
          doctest::Approx(p.dl_tx_power * h.h.squaredNorm()).epsilon(1e-12));

    // coherent channel: isotropic transmission adds up across the array
    ChannelRealization coherent;
    const std::complex<double> c(3e-4, -1e-4);
    coherent.h = Eigen::VectorXcd::Constant(p.n_antennas, c);
    CHECK(received_power(iso, coherent, p.dl_tx_power) ==
          doctest::Approx(p.dl_tx_power * p.n_antennas * std::norm(c)).epsilon(1e-12));
}

TEST_CASE("matched filtering on the true channel dominates the estimate") {
    const SystemParams p = default_params();
    const ChannelStats stats = build_channel_stats(p);
    for (int t = 0; t < 300; ++t) {
        Philox ch(42, t, kRngChannel), api_rng(42, t, kRngApi), noise(42, t, kRngNoise);
        const ChannelRealization h = sample_channel(stats, ch);
        const ApiModel api = draw_api(p, 0.1, ApiDistribution::Uniform, api_rng);
        const LseResult ce = run_ce(h, api, p.ul_pilot_power_fixed, p.ce_slot_fixed, p, noise);
        const double ideal = received_power(make_precoder(PrecoderKind::PerfectCsi, h, {}, api), h,
                                            p.dl_tx_power);
        const double est = received_power(
            make_precoder(PrecoderKind::HybridMrtNoApiOnPrecoder, h, ce.h_hat, api), h,
            p.dl_tx_power);
        CHECK(ideal >= est);
        CHECK(est >= 0.0);
    }
}

TEST_CASE("Monte Carlo means hit the closed-form references") {
    const SystemParams p = default_params();
    const ChannelStats stats = build_channel_stats(p);
    const std::uint64_t trials = 100000;

    SUBCASE("perfect CSI") {
        const McEstimate mc = mean_received_power_mc(PrecoderKind::PerfectCsi, p, stats, 0.065,
                                                     ApiDistribution::Uniform, 0.0, 0.0, trials,
                                                     4201);
        const double want = mean_received_power_ideal(p, stats);
        CHECK(std::fabs(mc.mean - want) < 3.0 * mc.std_error);
    }

    SUBCASE("isotropic") {
        const McEstimate mc = mean_received_power_mc(PrecoderKind::Isotropic, p, stats, 0.065,
                                                     ApiDistribution::Uniform, 0.0, 0.0, trials,
                                                     4202);
        const double want = mean_received_power_isotropic(p, stats);
        CHECK(std::fabs(mc.mean - want) < 3.0 * mc.std_error);
    }

    SUBCASE("Rayleigh perfect CSI") {
        SystemParams pr = p;
        pr.rice_factor = 0.0;
        const ChannelStats rayleigh = build_channel_stats(pr);
        const McEstimate mc = mean_received_power_mc(PrecoderKind::PerfectCsi, pr, rayleigh, 0.065,
                                                     ApiDistribution::Uniform, 0.0, 0.0, trials,
                                                     4203);
        const double want = pr.dl_tx_power * rayleigh.beta * pr.n_antennas;
        CHECK(std::fabs(mc.mean - want) < 3.0 * mc.std_error);
    }

    SUBCASE("estimate-based matched filter tracks the closed form") {
        const McEstimate mc = mean_received_power_mc(
            PrecoderKind::HybridMrtNoApiOnPrecoder, p, stats, 0.065, ApiDistribution::Uniform,
            p.ul_pilot_power_fixed, p.ce_slot_fixed, 30000, 4204);
        const double want =
            mean_received_power_approx(p, stats, p.ul_pilot_power_fixed, p.ce_slot_fixed);
        CHECK(std::fabs(mc.mean - want) / want < 0.02);
    }
}

TEST_CASE("closed-form mean received power: limits") {
    SystemParams p = default_params();
    const ChannelStats stats = build_channel_stats(p);

    SUBCASE("vanishing noise reaches the perfect-CSI mean") {
        SystemParams quiet = p;
        quiet.noise_psd = 1e-30;
        const ChannelStats qs = build_channel_stats(quiet);
        const double approx = mean_received_power_approx(quiet, qs, quiet.ul_pilot_power_fixed,
                                                         quiet.ce_slot_fixed);
        const double ideal = mean_received_power_ideal(quiet, qs);
        CHECK(std::fabs(approx - ideal) / ideal < 1e-6);
    }

    SUBCASE("single antenna loses nothing to estimation") {
        SystemParams one = p;
        one.n_antennas = 1;
        one.antenna_gains = Eigen::VectorXd::Ones(1);
        const ChannelStats os = build_channel_stats(one);
        const double approx =
            mean_received_power_approx(one, os, one.ul_pilot_power_fixed, one.ce_slot_fixed);
        CHECK(approx == doctest::Approx(mean_received_power_ideal(one, os)).epsilon(1e-12));
    }

    SUBCASE("zero pilot power degenerates to the isotropic level") {
        const double approx = mean_received_power_approx(p, stats, 0.0, p.ce_slot_fixed);
        const double want =
            p.dl_tx_power * (stats.mean.squaredNorm() + stats.beta / (stats.rice_factor + 1.0));
        CHECK(approx == doctest::Approx(want).epsilon(1e-12));
        // at broadside the isotropic closed form coincides with it
        CHECK(approx == doctest::Approx(mean_received_power_isotropic(p, stats)).epsilon(1e-12));
    }
}

TEST_CASE("Rayleigh closed form") {
    SystemParams p = default_params();
    p.rice_factor = 0.0;
    const ChannelStats stats = build_channel_stats(p);
    const double direct =
        mean_received_power_rayleigh_approx(p, p.ul_pilot_power_fixed, p.ce_slot_fixed);
    const double general =
        mean_received_power_approx(p, stats, p.ul_pilot_power_fixed, p.ce_slot_fixed);
    CHECK(direct == doctest::Approx(general).epsilon(1e-12));

    SystemParams quiet = p;
    quiet.noise_psd = 1e-32;
    CHECK(mean_received_power_rayleigh_approx(quiet, quiet.ul_pilot_power_fixed,
                                              quiet.ce_slot_fixed) ==
          doctest::Approx(quiet.dl_tx_power * large_scale_beta(quiet) * quiet.n_antennas)
              .epsilon(1e-6));
    CHECK(mean_received_power_rayleigh_approx(p, 0.0, p.ce_slot_fixed) ==
          doctest::Approx(p.dl_tx_power * large_scale_beta(p)).epsilon(1e-12));
}

TEST_CASE("closed-form mean is strictly increasing in both allocations") {
    const SystemParams base = default_params();
    Philox rng(43, 0, kRngMisc);
    for (int t = 0; t < 100; ++t) {
        SystemParams p = base;
        p.distance = rng.uniform(5.0, 25.0);
        p.rice_factor = rng.uniform(0.0, 10.0);
        const ChannelStats stats = build_channel_stats(p);
        const double pc = rng.uniform(1e-6, p.ul_pilot_power_max);
        const double tc = rng.uniform(1e-9, p.coherence_time / p.n_antennas * 0.5);
        const double base_val = mean_received_power_approx(p, stats, pc, tc);
        CHECK(mean_received_power_approx(p, stats, pc * 1.01, tc) > base_val);
        CHECK(mean_received_power_approx(p, stats, pc, tc * 1.01) > base_val);
    }
}

TEST_CASE("closed-form mean is sandwiched between isotropic and ideal") {
    const SystemParams base = default_params();
    Philox rng(44, 0, kRngMisc);
    for (int t = 0; t < 200; ++t) {
        SystemParams p = base;
        p.distance = rng.uniform(5.0, 25.0);
        p.rice_factor = rng.uniform(0.0, 10.0);
        p.aoa_deg = rng.uniform(-60.0, 60.0);
        const ChannelStats stats = build_channel_stats(p);
        const double pc = rng.uniform(0.0, p.ul_pilot_power_max);
        const double tc = rng.uniform(0.0, p.coherence_time / p.n_antennas * 0.9);
        const double mid = mean_received_power_approx(p, stats, pc, tc);
        CHECK(mid <= mean_received_power_ideal(p, stats) * (1.0 + 1e-12));
        CHECK(mid >= mean_received_power_isotropic(p, stats) * (1.0 - 1e-12));
    }
}

TEST_SUITE_END();
