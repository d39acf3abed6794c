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

#include "ebfsim/estimate.hpp"

#include <cmath>
#include <stdexcept>

namespace ebfsim {

namespace {

// s F_A^T F_A^* + (sigma_w^2/E_c) diag(C_FA), the Hermitian system behind the
// conditional statistics, with s the prior per-antenna channel variance.
Eigen::MatrixXcd conditional_system_matrix(const ChannelStats& stats, const ApiModel& api,
                                           double ce_energy, double noise_psd,
                                           const Eigen::MatrixXcd& f) {
    Eigen::MatrixXcd m = stats.cov_scale * (f.transpose() * f.conjugate());
    const Eigen::VectorXd cfa = cfa_diagonal(api);
    const double w = noise_psd / ce_energy;
    for (int i = 0; i < cfa.size(); ++i)
        m(i, i) += w * cfa[i];
    return m;
}

} // namespace

LseResult run_ce(const ChannelRealization& h, const ApiModel& api, double p_c, double tau_c,
                 const SystemParams& p, Philox& rng) {
    if (!(p_c > 0.0))
        throw std::invalid_argument("run_ce: p_c must be > 0");
    if (!(tau_c > 0.0))
        throw std::invalid_argument("run_ce: tau_c must be > 0");
    if (p.n_antennas * tau_c > p.coherence_time)
        throw std::invalid_argument("run_ce: schedule infeasible, N*tau_c exceeds coherence time");

    const EstimatorTerms t = estimator_terms(api);
    LseResult out;
    out.h_eff = estimator_transpose_times(t, h.h);
    out.ce_energy = p_c * p.n_antennas * tau_c;
    out.noise_var_scale = p.noise_psd / out.ce_energy;

    Eigen::VectorXcd w(h.h.size());
    for (Eigen::Index i = 0; i < w.size(); ++i)
        w[i] = rng.complex_normal(p.noise_psd);
    out.h_hat = out.h_eff + estimator_transpose_times(t, w) / std::sqrt(out.ce_energy);
    return out;
}

LseStats lse_stats(const ChannelStats& stats, const ApiModel& api, double p_c, double tau_c,
                   const SystemParams& p) {
    const double ec = p_c * p.n_antennas * tau_c;
    if (!(ec > 0.0))
        throw std::invalid_argument("lse_stats: training energy must be > 0");
    const Eigen::MatrixXcd f = analog_estimator_matrix(api);
    LseStats out;
    out.cov_hhat = stats.cov_scale * (f.transpose() * f.conjugate());
    const Eigen::VectorXd cfa = cfa_diagonal(api);
    const double w = p.noise_psd / ec;
    for (int i = 0; i < cfa.size(); ++i)
        out.cov_hhat(i, i) += w * cfa[i];
    out.sigma2_hhat = (stats.cov_scale + w) * sigma2_fa(api);
    out.mean_hhat = f.transpose() * stats.mean;
    return out;
}

NoncentralChiSquared norm_sq_distribution(const LseStats& ls) {
    if (!(ls.sigma2_hhat > 0.0))
        throw std::invalid_argument("norm_sq_distribution: sigma2_hhat must be > 0");
    NoncentralChiSquared d;
    d.dof = 2.0 * static_cast<double>(ls.mean_hhat.size());
    d.lambda = 2.0 * ls.mean_hhat.squaredNorm() / ls.sigma2_hhat;
    return d;
}

ConditionalStats conditional_stats(const Eigen::VectorXcd& h_hat, const ChannelStats& stats,
                                   const ApiModel& api, double ce_energy, double noise_psd) {
    if (!(ce_energy > 0.0))
        throw std::invalid_argument("conditional_stats: ce_energy must be > 0");
    const Eigen::MatrixXcd f = analog_estimator_matrix(api);
    const Eigen::MatrixXcd m = conditional_system_matrix(stats, api, ce_energy, noise_psd, f);
    const Eigen::VectorXcd innovation = h_hat - f.transpose() * stats.mean;
    const Eigen::LDLT<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("conditional_stats: singular conditioning system");
    ConditionalStats out;
    out.mean = stats.mean + stats.cov_scale * (f.conjugate() * solver.solve(innovation));
    const double s = stats.cov_scale;
    out.cov_scale = s * noise_psd / (s * ce_energy + noise_psd);
    return out;
}

Eigen::MatrixXcd conditional_cov_exact(const ChannelStats& stats, const ApiModel& api,
                                       double ce_energy, double noise_psd) {
    if (!(ce_energy > 0.0))
        throw std::invalid_argument("conditional_cov_exact: ce_energy must be > 0");
    const Eigen::MatrixXcd f = analog_estimator_matrix(api);
    const Eigen::MatrixXcd m = conditional_system_matrix(stats, api, ce_energy, noise_psd, f);
    const Eigen::LDLT<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("conditional_cov_exact: singular conditioning system");
    const double s = stats.cov_scale;
    const Eigen::Index n = f.rows();
    const Eigen::MatrixXcd ft = f.transpose();
    return s * Eigen::MatrixXcd::Identity(n, n) -
           (s * s) * (f.conjugate() * solver.solve(ft));
}

UpsilonStats upsilon_conditional(const Eigen::VectorXcd& h_hat, const ChannelStats& stats,
                                 const ApiModel& api, double ce_energy, double noise_psd) {
    const double norm = h_hat.norm();
    if (!(norm > 0.0))
        throw std::domain_error("upsilon_conditional: zero-norm estimate");
    const ConditionalStats cs = conditional_stats(h_hat, stats, api, ce_energy, noise_psd);
    UpsilonStats u;
    u.mean = (h_hat.adjoint() * cs.mean)(0) / norm;
    u.variance = cs.cov_scale;
    return u;
}

} // namespace ebfsim
