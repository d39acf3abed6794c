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

#ifndef EBFSIM_BEAMFORM_HPP
#define EBFSIM_BEAMFORM_HPP

#include "ebfsim/channel.hpp"
#include "ebfsim/estimate.hpp"
#include "ebfsim/impair.hpp"

#include <Eigen/Dense>

namespace ebfsim {

// Downlink precoder families.
//   HybridMrt                matched filter on the estimate, then pushed
//                            through the impaired phase-shifter pairs; the
//                            amplitude distortion is deliberately kept (no
//                            renormalization).
//   HybridMrtNoApiOnPrecoder matched filter on the estimate used as-is.
//   PerfectCsi               matched filter on the true channel.
//   Isotropic                uniform weights 1/sqrt(N).
//   SinglePs                 phase-only conjugate beamformer, one shifter per
//                            antenna, scaled 1/sqrt(N) to radiate the same
//                            total power as the unit-norm precoders; the lone
//                            shifter applies its branch-1 error pair.
enum class PrecoderKind {
    HybridMrt,
    HybridMrtNoApiOnPrecoder,
    PerfectCsi,
    Isotropic,
    SinglePs,
};

Eigen::RowVectorXcd make_precoder(PrecoderKind kind, const ChannelRealization& h,
                                  const Eigen::VectorXcd& h_hat, const ApiModel& api);

// p_d * |precoder . h|^2; any power normalization lives inside the precoder.
double received_power(const Eigen::RowVectorXcd& precoder, const ChannelRealization& h,
                      double p_d);

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

// Monte Carlo mean received power: per trial draws impairments and channel,
// runs the pilot phase (for estimate-based precoders), applies the precoder.
// Deterministic in master_seed regardless of scheduling.
McEstimate mean_received_power_mc(PrecoderKind kind, const SystemParams& p,
                                  const ChannelStats& stats, double delta,
                                  ApiDistribution dist, double p_c, double tau_c,
                                  std::uint64_t trials, std::uint64_t master_seed);

// Closed-form small-error mean received power,
// p_d [ ||mu_h||^2 + beta N/(K+1) - beta sigma_w^2 (N-1)/(beta N p_c tau_c + sigma_w^2 (K+1)) ].
double mean_received_power_approx(const SystemParams& p, const ChannelStats& stats, double p_c,
                                  double tau_c);

// Same closed form parameterized by the total training energy, shared by the
// hybrid (E_c = N p_c tau_c) and digital (E_c = p_c tau_c) architectures.
double mean_received_power_from_energy(const SystemParams& p, const ChannelStats& stats,
                                       double ce_energy);

// Rayleigh special case: p_d [ beta N - beta sigma_w^2 (N-1)/(beta N p_c tau_c + sigma_w^2) ].
double mean_received_power_rayleigh_approx(const SystemParams& p, double p_c, double tau_c);

// Perfect-CSI and isotropic reference means.
double mean_received_power_ideal(const SystemParams& p, const ChannelStats& stats);
double mean_received_power_isotropic(const SystemParams& p, const ChannelStats& stats);

} // namespace ebfsim

#endif
