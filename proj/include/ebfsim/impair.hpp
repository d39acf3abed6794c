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

#ifndef EBFSIM_IMPAIR_HPP
#define EBFSIM_IMPAIR_HPP

#include "ebfsim/rng.hpp"
#include "ebfsim/sysmodel.hpp"

#include <Eigen/Dense>
#include <complex>

namespace ebfsim {

enum class ApiDistribution { Uniform, Gaussian };

// Per-antenna phase-shifter impairments. Each antenna carries a pair of
// digitally controlled phase shifters; branch k has amplitude gain g_k and
// phase offset ph_k. A draw is held fixed for one coherence block.
struct ApiModel {
    double delta_g = 0.0;   // amplitude error magnitude
    double delta_phi = 0.0; // phase error magnitude [rad]
    ApiDistribution distribution = ApiDistribution::Uniform;
    Eigen::VectorXd g1, g2;   // amplitude gains, branch 1 and 2
    Eigen::VectorXd ph1, ph2; // phase offsets, branch 1 and 2 [rad]

    int n() const { return static_cast<int>(g1.size()); }
};

// Draws g = 1 - delta_g*(1 + Psi), ph = delta_phi*(1 + Psi) independently per
// antenna and branch. Uniform: Psi ~ U(-delta/2, delta/2); Gaussian:
// Psi ~ N(0, delta^2/36) so that 3 sigma spans delta/2.
ApiModel draw_api(const SystemParams& p, double delta, ApiDistribution dist, Philox& rng);
ApiModel draw_api(const SystemParams& p, double delta_g, double delta_phi, ApiDistribution dist,
                  Philox& rng);

// Deterministic draw with the random part forced to zero: g = 1 - delta,
// ph = delta on every branch. Useful as the small-error reference model.
ApiModel nominal_api(const SystemParams& p, double delta);
ApiModel nominal_api(const SystemParams& p, double delta_g, double delta_phi);

// Complex weight realized by an impaired phase-shifter pair for a target
// value a with |a| <= 2.
std::complex<double> theta_transform(std::complex<double> a, double g1, double g2, double ph1,
                                     double ph2);

// Entrywise theta_transform with antenna i using its own error pair.
Eigen::RowVectorXcd apply_api(const ApiModel& api, const Eigen::RowVectorXcd& a);

// Per-antenna estimator weights: `diag` is the pair response to a unit
// target, `off` the residual leakage of an idle pair. Column k of the analog
// estimator matrix holds diag at row k and each row i != k holds off[i].
struct EstimatorTerms {
    Eigen::VectorXcd diag; // theta{1} per antenna
    Eigen::VectorXcd off;  // theta{0} per antenna
};
EstimatorTerms estimator_terms(const ApiModel& api);

// Dense N x N analog channel estimator matrix F_A.
Eigen::MatrixXcd analog_estimator_matrix(const ApiModel& api);

// F_A^T x in O(N) using the diagonal-plus-leakage structure.
Eigen::VectorXcd estimator_transpose_times(const EstimatorTerms& t, const Eigen::VectorXcd& x);

// Closed-form per-antenna noise powers: entry i is the squared norm of the
// estimator vector active during training sub-slot i.
Eigen::VectorXd cfa_diagonal(const ApiModel& api);

// Average of cfa_diagonal, the scaled-identity constant of the small-error
// regime (equals (1-delta)^2 when all random parts are zero).
double sigma2_fa(const ApiModel& api);

} // namespace ebfsim

#endif
