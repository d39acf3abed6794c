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

#ifndef EBFSIM_OPTIMIZE_HPP
#define EBFSIM_OPTIMIZE_HPP

#include "ebfsim/beamform.hpp"
#include "ebfsim/channel.hpp"
#include "ebfsim/harvest.hpp"
#include "ebfsim/sysmodel.hpp"

namespace ebfsim {

// Hybrid: training occupies N*tau_c (one antenna per sub-slot) and spends
// E_c = N*p_c*tau_c. Digital: all antennas train at once over tau_c and the
// energy is E_c = p_c*tau_c.
enum class Architecture { Hybrid, Digital };

enum class AllocationMode {
    PowerOnly,
    TimeOnly,
    Joint,
    DigitalPowerOnly,
    DigitalTimeOnly,
    DigitalJoint,
};

struct AllocationResult {
    double p_c_opt = 0.0;
    double tau_c_opt = 0.0;
    int segment_index = 0; // 1-based PWLA piece at the optimum
    double predicted_stored_energy = 0.0;
    AllocationMode mode = AllocationMode::Joint;
    // False when the first-admissible-segment pass produced nothing or was
    // beaten by a boundary/threshold-crossing candidate.
    bool closed_form = true;
};

// Predicted mean stored energy per block:
//   (rfet_time) * L{mu_pr_hat(E_c)} - E_c
// with the architecture's timing. Throws when the training schedule does not
// fit in the coherence block.
double stored_energy_objective(Architecture arch, const SystemParams& p, const ChannelStats& stats,
                               const PwlaModel& m, double p_c, double tau_c);

// Hybrid-architecture convenience overload.
double stored_energy_objective(const SystemParams& p, const ChannelStats& stats,
                               const PwlaModel& m, double p_c, double tau_c);

// Closed-form pilot power for a fixed training slot (candidate-per-segment
// selection with first-admissible break, then boundary/crossing safeguard).
AllocationResult optimal_power(const SystemParams& p, const ChannelStats& stats,
                               const PwlaModel& m, double tau_c);

// Closed-form training slot for a fixed pilot power.
AllocationResult optimal_time(const SystemParams& p, const ChannelStats& stats,
                              const PwlaModel& m, double p_c);

// Jointly optimal allocation: pilot power pinned at its cap, slot from the
// per-segment closed form evaluated at that cap.
AllocationResult optimal_joint(const SystemParams& p, const ChannelStats& stats,
                               const PwlaModel& m);

// Digital-architecture variants; fixed coordinates come from
// ul_pilot_power_fixed / ce_slot_fixed.
AllocationResult optimal_digital(const SystemParams& p, const ChannelStats& stats,
                                 const PwlaModel& m, AllocationMode mode);

// Exhaustive argmax of the objective over the feasible box on log-spaced
// grids (with zero prepended) plus local linear refinement. Validation tool.
AllocationResult grid_oracle(const SystemParams& p, const ChannelStats& stats, const PwlaModel& m,
                             int grid_p, int grid_t, Architecture arch = Architecture::Hybrid);

// One-dimensional oracles with the other coordinate fixed.
AllocationResult grid_oracle_power(const SystemParams& p, const ChannelStats& stats,
                                   const PwlaModel& m, double tau_c, int grid_p,
                                   Architecture arch = Architecture::Hybrid);
AllocationResult grid_oracle_time(const SystemParams& p, const ChannelStats& stats,
                                  const PwlaModel& m, double p_c, int grid_t,
                                  Architecture arch = Architecture::Hybrid);

// Per-segment stationary-point candidates (before clamping); exposed for the
// concavity checks in tests.
Eigen::VectorXd power_candidates(const SystemParams& p, const ChannelStats& stats,
                                 const PwlaModel& m, double tau_c, Architecture arch);
Eigen::VectorXd time_candidates(const SystemParams& p, const ChannelStats& stats,
                                const PwlaModel& m, double p_c, Architecture arch);

} // namespace ebfsim

#endif
