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

#ifndef EBFSIM_ESTIMATE_HPP
#define EBFSIM_ESTIMATE_HPP

#include "ebfsim/channel.hpp"
#include "ebfsim/impair.hpp"
#include "ebfsim/specfun.hpp"

#include <Eigen/Dense>
#include <complex>

namespace ebfsim {

// One uplink training pass: effective channel, its least-squares estimate,
// and the energy bookkeeping behind the noise scaling.
struct LseResult {
    Eigen::VectorXcd h_eff;      // F_A^T h
    Eigen::VectorXcd h_hat;      // LS estimate of h_eff
    double ce_energy = 0.0;      // E_c = p_c * N * tau_c [J]
    double noise_var_scale = 0.0; // sigma_w^2 / E_c
};

// Second-order statistics of the estimate for a given impairment draw.
struct LseStats {
    Eigen::MatrixXcd cov_hhat;   // F_A^T C_h F_A^* + (sigma_w^2/E_c) diag(C_FA)
    double sigma2_hhat = 0.0;    // tr(cov_hhat) / N
    Eigen::VectorXcd mean_hhat;  // F_A^T mu_h
};

// Statistics of the true channel conditioned on the estimate. The mean is
// exact; the covariance is the small-error scalar approximation
// beta*sigma_w^2 / (beta*E_c + sigma_w^2*(K+1)) * I.
struct ConditionalStats {
    Eigen::VectorXcd mean;
    double cov_scale = 0.0;
};

struct UpsilonStats {
    std::complex<double> mean;
    double variance = 0.0;
};

// Runs the pilot phase: h_hat = F_A^T h + F_A^T w / sqrt(E_c) with w the
// integrated pilot noise, i.i.d. CN(0, sigma_w^2) per antenna. The pilot has
// unit energy, so this discrete form is the exact sufficient statistic of
// the continuous-time observation.
LseResult run_ce(const ChannelRealization& h, const ApiModel& api, double p_c, double tau_c,
                 const SystemParams& p, Philox& rng);

LseStats lse_stats(const ChannelStats& stats, const ApiModel& api, double p_c, double tau_c,
                   const SystemParams& p);

// Distribution of (2 / sigma2_hhat) * ||h_hat||^2: noncentral chi-square with
// 2N degrees of freedom and noncentrality 2*||mean_hhat||^2 / sigma2_hhat.
NoncentralChiSquared norm_sq_distribution(const LseStats& ls);

ConditionalStats conditional_stats(const Eigen::VectorXcd& h_hat, const ChannelStats& stats,
                                   const ApiModel& api, double ce_energy, double noise_psd);

// Exact conditional covariance (dense), kept separate so tests can compare
// it against the scalar approximation returned by conditional_stats.
Eigen::MatrixXcd conditional_cov_exact(const ChannelStats& stats, const ApiModel& api,
                                       double ce_energy, double noise_psd);

// Mean and variance of the beamformed energy signal h_hat^H h / ||h_hat||
// conditioned on the estimate; |.|^2 scaled by 2/variance is noncentral
// chi-square with two degrees of freedom.
UpsilonStats upsilon_conditional(const Eigen::VectorXcd& h_hat, const ChannelStats& stats,
                                 const ApiModel& api, double ce_energy, double noise_psd);

} // namespace ebfsim

#endif
