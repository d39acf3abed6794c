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

#ifndef EBFSIM_CHANNEL_HPP
#define EBFSIM_CHANNEL_HPP

#include "ebfsim/rng.hpp"
#include "ebfsim/sysmodel.hpp"

#include <Eigen/Dense>

namespace ebfsim {

// First and second order statistics of the Rician MISO channel,
// h ~ CN(mean, cov_scale * I).
struct ChannelStats {
    Eigen::VectorXcd mean; // deterministic (LoS) component
    double cov_scale = 0.0; // beta / (K + 1)
    double beta = 0.0;
    double rice_factor = 0.0;
};

struct ChannelRealization {
    Eigen::VectorXcd h;
};

// mean[k] = sqrt(beta*K/(K+1)) * sqrt(alpha_k) * exp(j*2*pi*k*dbar*sin(psi)),
// where dbar is the antenna spacing in carrier wavelengths (1/2 for the
// half-wavelength default), so the reference antenna k=0 has zero phase.
ChannelStats build_channel_stats(const SystemParams& p);

// h = mean + sqrt(cov_scale) * g with g i.i.d. standard circularly
// symmetric complex Gaussian.
ChannelRealization sample_channel(const ChannelStats& stats, Philox& rng);

} // namespace ebfsim

#endif
