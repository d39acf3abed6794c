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

#include "ebfsim/beamform.hpp"

#include <cmath>
#include <stdexcept>

namespace ebfsim {

Eigen::RowVectorXcd make_precoder(PrecoderKind kind, const ChannelRealization& h,
                                  const Eigen::VectorXcd& h_hat, const ApiModel& api) {
    switch (kind) {
    case PrecoderKind::PerfectCsi: {
        const double norm = h.h.norm();
        if (!(norm > 0.0))
            throw std::domain_error("make_precoder: zero-norm channel");
        return h.h.adjoint() / norm;
    }
    case PrecoderKind::Isotropic: {
        const Eigen::Index n = h.h.size();
        return Eigen::RowVectorXcd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    }
    case PrecoderKind::HybridMrtNoApiOnPrecoder:
    case PrecoderKind::HybridMrt: {
        const double norm = h_hat.norm();
        if (!(norm > 0.0))
            throw std::domain_error("make_precoder: zero-norm estimate");
        const Eigen::RowVectorXcd mrt = h_hat.adjoint() / norm;
        if (kind == PrecoderKind::HybridMrtNoApiOnPrecoder)
            return mrt;
        return apply_api(api, mrt);
    }
    case PrecoderKind::SinglePs: {
        const double norm = h_hat.norm();
        if (!(norm > 0.0))
            throw std::domain_error("make_precoder: zero-norm estimate");
        if (api.n() != h_hat.size())
            throw std::invalid_argument("make_precoder: impairment size mismatch");
        const Eigen::Index n = h_hat.size();
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        Eigen::RowVectorXcd z(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double mag = std::abs(h_hat[i]);
            const std::complex<double> ideal =
                mag > 0.0 ? scale * std::conj(h_hat[i]) / mag : std::complex<double>(scale, 0.0);
            z[i] = api.g1[i] * std::polar(1.0, api.ph1[i]) * ideal;
        }
        return z;
    }
    }
    throw std::invalid_argument("make_precoder: unknown kind");
}

double received_power(const Eigen::RowVectorXcd& precoder, const ChannelRealization& h,
                      double p_d) {
    const std::complex<double> y = (precoder * h.h)(0);
    return p_d * std::norm(y);
}

McEstimate mean_received_power_mc(PrecoderKind kind, const SystemParams& p,
                                  const ChannelStats& stats, double delta,
                                  ApiDistribution dist, double p_c, double tau_c,
                                  std::uint64_t trials, std::uint64_t master_seed) {
    if (trials < 1)
        throw std::invalid_argument("mean_received_power_mc: trials must be >= 1");
    const bool needs_ce =
        kind == PrecoderKind::HybridMrt || kind == PrecoderKind::HybridMrtNoApiOnPrecoder ||
        kind == PrecoderKind::SinglePs;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Philox api_rng(master_seed, t, kRngApi);
        Philox ch_rng(master_seed, t, kRngChannel);
        Philox noise_rng(master_seed, t, kRngNoise);
        const ApiModel api = draw_api(p, delta, dist, api_rng);
        const ChannelRealization h = sample_channel(stats, ch_rng);
        Eigen::RowVectorXcd z;
        if (needs_ce) {
            const LseResult ce = run_ce(h, api, p_c, tau_c, p, noise_rng);
            z = make_precoder(kind, h, ce.h_hat, api);
        } else {
            z = make_precoder(kind, h, Eigen::VectorXcd(), api);
        }
        const double pr = received_power(z, h, p.dl_tx_power);
        sum += pr;
        sum_sq += pr * pr;
    }
    McEstimate out;
    const double n = static_cast<double>(trials);
    out.mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - out.mean * out.mean);
    out.std_error = std::sqrt(var / n);
    return out;
}

double mean_received_power_approx(const SystemParams& p, const ChannelStats& stats, double p_c,
                                  double tau_c) {
    if (p_c < 0.0 || tau_c < 0.0)
        throw std::invalid_argument("mean_received_power_approx: allocation must be >= 0");
    return mean_received_power_from_energy(p, stats, p.n_antennas * p_c * tau_c);
}

double mean_received_power_from_energy(const SystemParams& p, const ChannelStats& stats,
                                       double ce_energy) {
    if (ce_energy < 0.0)
        throw std::invalid_argument("mean_received_power_from_energy: energy must be >= 0");
    const double beta = stats.beta;
    const double k1 = stats.rice_factor + 1.0;
    const double n = static_cast<double>(p.n_antennas);
    const double mu_sq = stats.mean.squaredNorm();
    const double denom = beta * ce_energy + p.noise_psd * k1;
    const double ce_loss = beta * p.noise_psd * (n - 1.0) / denom;
    return p.dl_tx_power * (mu_sq + beta * n / k1 - ce_loss);
}

double mean_received_power_rayleigh_approx(const SystemParams& p, double p_c, double tau_c) {
    if (p_c < 0.0 || tau_c < 0.0)
        throw std::invalid_argument("mean_received_power_rayleigh_approx: allocation must be >= 0");
    const double beta = large_scale_beta(p);
    const double n = static_cast<double>(p.n_antennas);
    const double denom = beta * n * p_c * tau_c + p.noise_psd;
    return p.dl_tx_power * (beta * n - beta * p.noise_psd * (n - 1.0) / denom);
}

double mean_received_power_ideal(const SystemParams& p, const ChannelStats& stats) {
    const double n = static_cast<double>(p.n_antennas);
    return p.dl_tx_power * (stats.mean.squaredNorm() + stats.beta * n / (stats.rice_factor + 1.0));
}

double mean_received_power_isotropic(const SystemParams& p, const ChannelStats& stats) {
    const double n = static_cast<double>(p.n_antennas);
    const std::complex<double> s = stats.mean.sum();
    return p.dl_tx_power * (std::norm(s) / n + stats.beta / (stats.rice_factor + 1.0));
}

} // namespace ebfsim
