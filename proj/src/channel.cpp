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

#include "ebfsim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ebfsim {

ChannelStats build_channel_stats(const SystemParams& p) {
    if (p.rice_factor < 0.0)
        throw std::invalid_argument("build_channel_stats: rice_factor must be >= 0");
    if (p.antenna_gains.size() != p.n_antennas)
        throw std::invalid_argument("build_channel_stats: antenna_gains length mismatch");

    const double beta = large_scale_beta(p);
    const double k = p.rice_factor;
    ChannelStats stats;
    stats.beta = beta;
    stats.rice_factor = k;
    stats.cov_scale = beta / (k + 1.0);
    stats.mean.resize(p.n_antennas);

    const double los_amp = std::sqrt(beta * k / (k + 1.0));
    const double spacing_wavelengths = p.antenna_spacing * p.carrier_freq / kSpeedOfLight;
    const double psi = p.aoa_deg * M_PI / 180.0;
    const double phase_step = 2.0 * M_PI * spacing_wavelengths * std::sin(psi);
    for (int i = 0; i < p.n_antennas; ++i) {
        const double phase = phase_step * i;
        stats.mean[i] = los_amp * std::sqrt(p.antenna_gains[i]) *
                        std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return stats;
}

ChannelRealization sample_channel(const ChannelStats& stats, Philox& rng) {
    ChannelRealization out;
    out.h.resize(stats.mean.size());
    const double scale = stats.cov_scale;
    for (Eigen::Index i = 0; i < stats.mean.size(); ++i)
        out.h[i] = stats.mean[i] + rng.complex_normal(scale);
    return out;
}

} // namespace ebfsim
