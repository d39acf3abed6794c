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

#include <cmath>
#include <stdexcept>

namespace ebfsim {

SystemParams default_params() {
    SystemParams p;
    p.n_antennas = 20;
    p.coherence_time = 10e-3;
    p.ce_slot_fixed = p.coherence_time / 1000.0;
    p.dl_tx_power = dbm_to_watts(36.0);
    p.ul_pilot_power_max = dbm_to_watts(10.0);
    p.ul_pilot_power_fixed = p.ul_pilot_power_max / 100.0;
    p.noise_psd = dbm_to_watts(-150.0);
    p.carrier_freq = 915e6;
    p.distance = 15.0;
    p.pathloss_exp = 2.5;
    p.rice_factor = 2.0;
    p.aoa_deg = 0.0;
    p.antenna_gains = Eigen::VectorXd::Ones(p.n_antennas);
    p.antenna_spacing = kSpeedOfLight / (2.0 * p.carrier_freq);
    const double w = p.antenna_spacing / (2.0 * M_PI);
    p.unit_ref_atten = w * w;
    return p;
}

void validate(const SystemParams& p) {
    if (p.n_antennas < 1)
        throw std::invalid_argument("SystemParams: n_antennas must be >= 1");
    if (!(p.coherence_time > 0.0))
        throw std::invalid_argument("SystemParams: coherence_time must be > 0");
    if (p.ce_slot_fixed < 0.0)
        throw std::invalid_argument("SystemParams: ce_slot_fixed must be >= 0");
    if (p.dl_tx_power < 0.0 || p.ul_pilot_power_max < 0.0 || p.ul_pilot_power_fixed < 0.0)
        throw std::invalid_argument("SystemParams: powers must be >= 0");
    if (!(p.noise_psd > 0.0))
        throw std::invalid_argument("SystemParams: noise_psd must be > 0");
    if (!(p.carrier_freq > 0.0))
        throw std::invalid_argument("SystemParams: carrier_freq must be > 0");
    if (!(p.distance > 0.0))
        throw std::invalid_argument("SystemParams: distance must be > 0");
    if (p.rice_factor < 0.0)
        throw std::invalid_argument("SystemParams: rice_factor must be >= 0");
    if (!(p.antenna_spacing > 0.0))
        throw std::invalid_argument("SystemParams: antenna_spacing must be > 0");
    if (!(p.unit_ref_atten > 0.0))
        throw std::invalid_argument("SystemParams: unit_ref_atten must be > 0");
    if (p.antenna_gains.size() != p.n_antennas)
        throw std::invalid_argument("SystemParams: antenna_gains length must equal n_antennas");
    for (Eigen::Index i = 0; i < p.antenna_gains.size(); ++i)
        if (!(p.antenna_gains[i] > 0.0))
            throw std::invalid_argument("SystemParams: antenna gains must be > 0");
}

double large_scale_beta(const SystemParams& p) {
    if (!(p.distance > 0.0))
        throw std::invalid_argument("large_scale_beta: distance must be > 0");
    return p.unit_ref_atten / std::pow(p.distance, p.pathloss_exp);
}

double dbm_to_watts(double dbm) {
    return std::pow(10.0, dbm / 10.0) * 1e-3;
}

double watts_to_dbm(double watts) {
    if (!(watts > 0.0))
        throw std::domain_error("watts_to_dbm: watts must be > 0");
    return 10.0 * std::log10(watts / 1e-3);
}

} // namespace ebfsim
