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

#include "ebfsim/sysmodel.hpp"

#include <doctest.h>

#include <cmath>

using namespace ebfsim;

TEST_SUITE_BEGIN("sysmodel");

TEST_CASE("defaults carry the standard scenario") {
    const SystemParams p = default_params();
    CHECK(p.n_antennas == 20);
    CHECK(p.coherence_time == doctest::Approx(10e-3));
    CHECK(p.ce_slot_fixed == doctest::Approx(10e-6));
    CHECK(p.dl_tx_power == doctest::Approx(3.981071705534972).epsilon(1e-12));
    CHECK(p.ul_pilot_power_max == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(p.ul_pilot_power_fixed == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(p.noise_psd == doctest::Approx(1e-18).epsilon(1e-12));
    CHECK(p.carrier_freq == doctest::Approx(915e6));
    CHECK(p.distance == doctest::Approx(15.0));
    CHECK(p.pathloss_exp == doctest::Approx(2.5));
    CHECK(p.rice_factor == doctest::Approx(2.0));
    CHECK(p.aoa_deg == 0.0);
    CHECK(p.antenna_gains.size() == 20);
    CHECK(p.antenna_gains.minCoeff() == 1.0);
    CHECK(p.antenna_spacing == doctest::Approx(0.16393442622950818).epsilon(1e-9));
    CHECK_NOTHROW(validate(p));
}

TEST_CASE("large-scale fading follows varpi / d^rho") {
    SystemParams p = default_params();
    const double want = std::pow(p.antenna_spacing / (2.0 * M_PI), 2) / std::pow(15.0, 2.5);
    CHECK(large_scale_beta(p) == doctest::Approx(want).epsilon(1e-12));
    CHECK(large_scale_beta(p) == doctest::Approx(7.81e-7).epsilon(0.01));

    p.distance = 1.0;
    p.pathloss_exp = 3.7;
    CHECK(large_scale_beta(p) == doctest::Approx(p.unit_ref_atten).epsilon(1e-12));

    p.distance = 123.0;
    p.pathloss_exp = 0.0;
    CHECK(large_scale_beta(p) == doctest::Approx(p.unit_ref_atten).epsilon(1e-12));

    p.distance = -3.0;
    CHECK_THROWS_AS(large_scale_beta(p), std::invalid_argument);
}

TEST_CASE("beta is strictly decreasing in distance for positive exponents") {
    SystemParams p = default_params();
    p.distance = 2.0;
    double prev = large_scale_beta(p);
    for (double d = 3.37; d <= 60.0; d += 1.37) {
        p.distance = d;
        const double next = large_scale_beta(p);
        CHECK(next < prev);
        prev = next;
    }
}

TEST_CASE("dBm conversions") {
    CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(dbm_to_watts(36.0) == doctest::Approx(3.981071705534972).epsilon(1e-12));
    CHECK(dbm_to_watts(-150.0) == doctest::Approx(1e-18).epsilon(1e-12));
    CHECK_THROWS_AS(watts_to_dbm(0.0), std::domain_error);
    CHECK_THROWS_AS(watts_to_dbm(-1.0), std::domain_error);
    for (double dbm = -200.0; dbm <= 60.0; dbm += 3.7) {
        CHECK(watts_to_dbm(dbm_to_watts(dbm)) == doctest::Approx(dbm).epsilon(1e-12));
    }
}

TEST_CASE("validate rejects broken parameter sets") {
    SystemParams p = default_params();
    p.n_antennas = 0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = default_params();
    p.noise_psd = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = default_params();
    p.antenna_gains = Eigen::VectorXd::Ones(3);
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = default_params();
    p.antenna_gains[4] = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_SUITE_END();
