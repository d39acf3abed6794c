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

#include "ebfsim/impair.hpp"

#include <cmath>
#include <stdexcept>

namespace ebfsim {

namespace {

double draw_psi(double width, ApiDistribution dist, Philox& rng) {
    if (dist == ApiDistribution::Uniform)
        return rng.uniform(-0.5 * width, 0.5 * width);
    return rng.normal() * (width / 6.0);
}

} // namespace

ApiModel draw_api(const SystemParams& p, double delta, ApiDistribution dist, Philox& rng) {
    return draw_api(p, delta, delta, dist, rng);
}

ApiModel draw_api(const SystemParams& p, double delta_g, double delta_phi, ApiDistribution dist,
                  Philox& rng) {
    if (delta_g < 0.0 || delta_phi < 0.0)
        throw std::invalid_argument("draw_api: error magnitudes must be >= 0");
    const int n = p.n_antennas;
    ApiModel api;
    api.delta_g = delta_g;
    api.delta_phi = delta_phi;
    api.distribution = dist;
    api.g1.resize(n);
    api.g2.resize(n);
    api.ph1.resize(n);
    api.ph2.resize(n);
    for (int i = 0; i < n; ++i) {
        api.g1[i] = 1.0 - delta_g * (1.0 + draw_psi(delta_g, dist, rng));
        api.g2[i] = 1.0 - delta_g * (1.0 + draw_psi(delta_g, dist, rng));
        api.ph1[i] = delta_phi * (1.0 + draw_psi(delta_phi, dist, rng));
        api.ph2[i] = delta_phi * (1.0 + draw_psi(delta_phi, dist, rng));
    }
    return api;
}

ApiModel nominal_api(const SystemParams& p, double delta) {
    return nominal_api(p, delta, delta);
}

ApiModel nominal_api(const SystemParams& p, double delta_g, double delta_phi) {
    if (delta_g < 0.0 || delta_phi < 0.0)
        throw std::invalid_argument("nominal_api: error magnitudes must be >= 0");
    const int n = p.n_antennas;
    ApiModel api;
    api.delta_g = delta_g;
    api.delta_phi = delta_phi;
    api.g1 = Eigen::VectorXd::Constant(n, 1.0 - delta_g);
    api.g2 = api.g1;
    api.ph1 = Eigen::VectorXd::Constant(n, delta_phi);
    api.ph2 = api.ph1;
    return api;
}

std::complex<double> theta_transform(std::complex<double> a, double g1, double g2, double ph1,
                                     double ph2) {
    const double mag = std::abs(a);
    if (mag > 2.0 + 1e-12)
        throw std::domain_error("theta_transform: |a| must be <= 2");
    const std::complex<double> b1 = g1 * std::polar(1.0, ph1);
    const std::complex<double> b2 = g2 * std::polar(1.0, ph2);
    const double half = std::min(0.5 * mag, 1.0);
    const std::complex<double> radial = half * (b1 + b2);
    const std::complex<double> tangential =
        std::complex<double>(0.0, 1.0) * std::sqrt(std::max(0.0, 1.0 - half * half)) * (b1 - b2);
    const std::complex<double> phase =
        mag > 0.0 ? a / mag : std::complex<double>(1.0, 0.0);
    return phase * (radial + tangential);
}

Eigen::RowVectorXcd apply_api(const ApiModel& api, const Eigen::RowVectorXcd& a) {
    if (a.size() != api.n())
        throw std::invalid_argument("apply_api: size mismatch");
    Eigen::RowVectorXcd out(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out[i] = theta_transform(a[i], api.g1[i], api.g2[i], api.ph1[i], api.ph2[i]);
    return out;
}

EstimatorTerms estimator_terms(const ApiModel& api) {
    const int n = api.n();
    EstimatorTerms t;
    t.diag.resize(n);
    t.off.resize(n);
    const std::complex<double> j(0.0, 1.0);
    const std::complex<double> wp(1.0, std::sqrt(3.0));  // e^{j*acos(1/2)} * 2
    const std::complex<double> wm(1.0, -std::sqrt(3.0)); // e^{-j*acos(1/2)} * 2
    for (int i = 0; i < n; ++i) {
        const std::complex<double> b1 = api.g1[i] * std::polar(1.0, api.ph1[i]);
        const std::complex<double> b2 = api.g2[i] * std::polar(1.0, api.ph2[i]);
        t.diag[i] = 0.5 * (b1 * wp + b2 * wm);
        t.off[i] = j * (b1 - b2);
    }
    return t;
}

Eigen::MatrixXcd analog_estimator_matrix(const ApiModel& api) {
    const int n = api.n();
    const EstimatorTerms t = estimator_terms(api);
    Eigen::MatrixXcd f(n, n);
    for (int i = 0; i < n; ++i)
        f.row(i).setConstant(t.off[i]);
    for (int i = 0; i < n; ++i)
        f(i, i) = t.diag[i];
    return f;
}

Eigen::VectorXcd estimator_transpose_times(const EstimatorTerms& t, const Eigen::VectorXcd& x) {
    const Eigen::Index n = x.size();
    std::complex<double> leak(0.0, 0.0);
    for (Eigen::Index k = 0; k < n; ++k)
        leak += t.off[k] * x[k];
    Eigen::VectorXcd out(n);
    for (Eigen::Index i = 0; i < n; ++i)
        out[i] = t.diag[i] * x[i] + (leak - t.off[i] * x[i]);
    return out;
}

Eigen::VectorXd cfa_diagonal(const ApiModel& api) {
    const int n = api.n();
    Eigen::VectorXd c(n);
    double leak_total = 0.0;
    Eigen::VectorXd leak(n);
    for (int k = 0; k < n; ++k) {
        const double dph = api.ph1[k] - api.ph2[k];
        leak[k] = api.g1[k] * api.g1[k] + api.g2[k] * api.g2[k] -
                  2.0 * api.g1[k] * api.g2[k] * std::cos(dph);
        leak_total += leak[k];
    }
    for (int i = 0; i < n; ++i) {
        const double dph = api.ph1[i] - api.ph2[i];
        const double diag_sq = api.g1[i] * api.g1[i] + api.g2[i] * api.g2[i] -
                               api.g1[i] * api.g2[i] *
                                   (std::sqrt(3.0) * std::sin(dph) + std::cos(dph));
        c[i] = diag_sq + (leak_total - leak[i]);
    }
    return c;
}

double sigma2_fa(const ApiModel& api) {
    return cfa_diagonal(api).mean();
}

} // namespace ebfsim
