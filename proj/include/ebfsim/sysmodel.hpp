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

#ifndef EBFSIM_SYSMODEL_HPP
#define EBFSIM_SYSMODEL_HPP

#include <Eigen/Dense>

namespace ebfsim {

// Propagation reference speed used for wavelength-derived defaults.
constexpr double kSpeedOfLight = 3.0e8;

// Scenario constants in SI units (watts, joules, seconds, hertz, meters).
// dBm and sub-second units exist only at I/O boundaries.
struct SystemParams {
    int n_antennas = 20;               // N
    double coherence_time = 10e-3;     // tau [s]
    double ce_slot_fixed = 10e-6;      // tau_c0 [s], fixed per-antenna training slot
    double dl_tx_power = 0.0;          // p_d [W]
    double ul_pilot_power_max = 0.0;   // p_max [W]
    double ul_pilot_power_fixed = 0.0; // p_c0 [W]
    double noise_psd = 1e-18;          // sigma_w^2 [J]
    double carrier_freq = 915e6;       // f_c [Hz]
    double distance = 15.0;            // d [m]
    double pathloss_exp = 2.5;         // rho
    double rice_factor = 2.0;          // K
    double aoa_deg = 0.0;              // psi [deg]
    Eigen::VectorXd antenna_gains;     // alpha_i, length N
    double antenna_spacing = 0.0;      // delta [m]
    double unit_ref_atten = 0.0;       // varpi, attenuation at unit distance
};

// Scenario defaults: N=20, tau=10 ms, tau_c0=10 us, p_d=36 dBm,
// p_max=10 dBm, p_c0=-10 dBm, sigma_w^2=-150 dBm, f_c=915 MHz, d=15 m,
// rho=2.5, K=2, psi=0, unit gains, half-wavelength spacing.
SystemParams default_params();

// Throws std::invalid_argument when any field violates its constraints.
void validate(const SystemParams& p);

// Large-scale fading beta = varpi / d^rho.
double large_scale_beta(const SystemParams& p);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

} // namespace ebfsim

#endif
