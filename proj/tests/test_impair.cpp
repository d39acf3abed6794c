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

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace ebfsim;

namespace {

// Independent oracle: the two-exponential phase-shifter pair form
//   g1 e^{j(acos(|a|/2) + arg a + ph1)} + g2 e^{-j(acos(|a|/2) - arg a - ph2)}.
std::complex<double> pair_form(std::complex<double> a, double g1, double g2, double ph1,
                               double ph2) {
    const double mag = std::abs(a);
    const double ang = mag > 0.0 ? std::arg(a) : 0.0;
    const double split = std::acos(0.5 * mag);
    return g1 * std::polar(1.0, split + ang + ph1) + g2 * std::polar(1.0, -(split - ang - ph2));
}

} // namespace

TEST_SUITE_BEGIN("impair");

TEST_CASE("theta transform equals the two-exponential pair form") {
    Philox rng(11, 0, kRngMisc);
    for (int trial = 0; trial < 2000; ++trial) {
        const double mag = rng.uniform(0.0, 2.0);
        const double ang = rng.uniform(-M_PI, M_PI);
        const std::complex<double> a = std::polar(mag, ang);
        const double g1 = rng.uniform(0.8, 1.1);
        const double g2 = rng.uniform(0.8, 1.1);
        const double ph1 = rng.uniform(-0.3, 0.3);
        const double ph2 = rng.uniform(-0.3, 0.3);
        const std::complex<double> got = theta_transform(a, g1, g2, ph1, ph2);
        const std::complex<double> want = pair_form(a, g1, g2, ph1, ph2);
        CHECK(std::abs(got - want) < 1e-12 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("theta transform special cases") {
    Philox rng(12, 0, kRngMisc);
    // ideal pair returns the target exactly
    for (int trial = 0; trial < 200; ++trial) {
        const std::complex<double> a = std::polar(rng.uniform(0.0, 2.0), rng.uniform(-M_PI, M_PI));
        CHECK(std::abs(theta_transform(a, 1.0, 1.0, 0.0, 0.0) - a) < 1e-12);
    }
    // matched branch errors cancel at a = 0
    CHECK(std::abs(theta_transform({0.0, 0.0}, 0.9, 0.9, 0.2, 0.2)) == 0.0);
    // matched branch errors act as a common complex gain
    for (int trial = 0; trial < 200; ++trial) {
        const std::complex<double> a = std::polar(rng.uniform(0.0, 2.0), rng.uniform(-M_PI, M_PI));
        const double g = rng.uniform(0.8, 1.0);
        const double ph = rng.uniform(-0.2, 0.2);
        const std::complex<double> got = theta_transform(a, g, g, ph, ph);
        const std::complex<double> want = g * std::polar(1.0, ph) * a;
        CHECK(std::abs(got - want) < 1e-12);
    }
    // cross-check of the worked point a=1, ph1=0.1
    const std::complex<double> got = theta_transform({1.0, 0.0}, 1.0, 1.0, 0.1, 0.0);
    const std::complex<double> want =
        std::polar(1.0, std::acos(0.5) + 0.1) + std::polar(1.0, -std::acos(0.5));
    CHECK(std::abs(got - want) < 1e-12);
    CHECK_THROWS_AS(theta_transform({2.5, 0.0}, 1, 1, 0, 0), std::domain_error);
}

TEST_CASE("draw_api: zero severity is exactly ideal") {
    const SystemParams p = default_params();
    Philox rng(13, 0, kRngApi);
    const ApiModel api = draw_api(p, 0.0, ApiDistribution::Uniform, rng);
    CHECK(api.g1.minCoeff() == 1.0);
    CHECK(api.g1.maxCoeff() == 1.0);
    CHECK(api.g2.minCoeff() == 1.0);
    CHECK(api.ph1.cwiseAbs().maxCoeff() == 0.0);
    CHECK(api.ph2.cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(draw_api(p, -0.1, ApiDistribution::Uniform, rng), std::invalid_argument);
}

TEST_CASE("draw_api: uniform mean and range") {
    const SystemParams p = default_params();
    const double delta = 0.065;
    double sum_g = 0.0;
    std::uint64_t count = 0;
    for (int t = 0; t < 5000; ++t) {
        Philox rng(14, t, kRngApi);
        const ApiModel api = draw_api(p, delta, ApiDistribution::Uniform, rng);
        sum_g += api.g1.sum() + api.g2.sum();
        count += 2 * p.n_antennas;
        const double lo = 1.0 - delta * (1.0 + delta / 2.0);
        const double hi = 1.0 - delta * (1.0 - delta / 2.0);
        CHECK(api.g1.minCoeff() >= lo);
        CHECK(api.g1.maxCoeff() <= hi);
        CHECK(api.ph1.minCoeff() >= delta * (1.0 - delta / 2.0));
        CHECK(api.ph1.maxCoeff() <= delta * (1.0 + delta / 2.0));
    }
    CHECK(sum_g / count == doctest::Approx(1.0 - delta).epsilon(0.001 / (1.0 - delta)));
}

TEST_CASE("draw_api: gaussian phase variance is delta^4/36") {
    const SystemParams p = default_params();
    const double delta = 0.12;
    double sum = 0.0, sum_sq = 0.0;
    std::uint64_t count = 0;
    for (int t = 0; t < 5000; ++t) {
        Philox rng(15, t, kRngApi);
        const ApiModel api = draw_api(p, delta, ApiDistribution::Gaussian, rng);
        for (int i = 0; i < api.n(); ++i) {
            sum += api.ph1[i];
            sum_sq += api.ph1[i] * api.ph1[i];
            ++count;
        }
    }
    const double mean = sum / count;
    const double var = sum_sq / count - mean * mean;
    CHECK(var == doctest::Approx(std::pow(delta, 4) / 36.0).epsilon(0.10));
    CHECK(mean == doctest::Approx(delta).epsilon(0.01));
}

TEST_CASE("estimator matrix: ideal case is the identity") {
    const SystemParams p = default_params();
    const ApiModel api = nominal_api(p, 0.0);
    const Eigen::MatrixXcd f = analog_estimator_matrix(api);
    CHECK((f - Eigen::MatrixXcd::Identity(p.n_antennas, p.n_antennas)).cwiseAbs().maxCoeff() <
          1e-15);
    CHECK(sigma2_fa(api) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((cfa_diagonal(api) - Eigen::VectorXd::Ones(p.n_antennas)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("estimator matrix: small-error limit with the random part pinned") {
    const SystemParams p = default_params();
    const double delta = 0.065;
    const ApiModel api = nominal_api(p, delta);
    const Eigen::MatrixXcd f = analog_estimator_matrix(api);
    const std::complex<double> want = (1.0 - delta) * std::polar(1.0, delta);
    for (int i = 0; i < p.n_antennas; ++i) {
        CHECK(std::abs(f(i, i) - want) < 1e-12);
        for (int k = 0; k < p.n_antennas; ++k)
            if (k != i)
                CHECK(std::abs(f(i, k)) < 1e-12); // equal branches leak nothing
    }
}

TEST_CASE("estimator matrix agrees with entrywise theta of the switching pattern") {
    const SystemParams p = default_params();
    Philox rng(16, 3, kRngApi);
    const ApiModel api = draw_api(p, 0.1, ApiDistribution::Uniform, rng);
    const Eigen::MatrixXcd f = analog_estimator_matrix(api);
    for (int k = 0; k < p.n_antennas; ++k) {
        for (int i = 0; i < p.n_antennas; ++i) {
            const std::complex<double> target = i == k ? 1.0 : 0.0;
            const std::complex<double> want =
                theta_transform(target, api.g1[i], api.g2[i], api.ph1[i], api.ph2[i]);
            CHECK(std::abs(f(i, k) - want) < 1e-12);
        }
    }
    // off-diagonal entries are constant along each row
    for (int i = 0; i < p.n_antennas; ++i) {
        const int other = i == 0 ? 1 : 0;
        for (int k = 0; k < p.n_antennas; ++k)
            if (k != i)
                CHECK(std::abs(f(i, k) - f(i, other)) == 0.0);
    }
}

TEST_CASE("structured product matches the dense transpose product") {
    const SystemParams p = default_params();
    Philox rng(17, 9, kRngApi);
    const ApiModel api = draw_api(p, 0.12, ApiDistribution::Uniform, rng);
    const Eigen::MatrixXcd f = analog_estimator_matrix(api);
    Philox vec_rng(17, 10, kRngMisc);
    Eigen::VectorXcd x(p.n_antennas);
    for (int i = 0; i < p.n_antennas; ++i)
        x[i] = vec_rng.complex_normal(1.0);
    const Eigen::VectorXcd dense = f.transpose() * x;
    const Eigen::VectorXcd fast = estimator_transpose_times(estimator_terms(api), x);
    CHECK((dense - fast).cwiseAbs().maxCoeff() < 1e-14 * dense.norm());
}

TEST_CASE("noise-power diagonal equals the active-column norms") {
    const SystemParams p = default_params();
    for (int t = 0; t < 50; ++t) {
        Philox rng(18, t, kRngApi);
        const ApiModel api = draw_api(p, 0.065, ApiDistribution::Uniform, rng);
        const Eigen::MatrixXcd f = analog_estimator_matrix(api);
        const Eigen::VectorXd cfa = cfa_diagonal(api);
        for (int i = 0; i < p.n_antennas; ++i) {
            // column i is the estimator vector used during training slot i
            CHECK(cfa[i] == doctest::Approx(f.col(i).squaredNorm()).epsilon(1e-10));
        }
        CHECK(sigma2_fa(api) == doctest::Approx(cfa.mean()).epsilon(1e-12));
    }
}

TEST_CASE("sigma2_fa concentrates near (1-delta)^2") {
    const SystemParams p = default_params();
    double lo = 1e9, hi = -1e9;
    for (int t = 0; t < 10000; ++t) {
        Philox rng(19, t, kRngApi);
        const double s = sigma2_fa(draw_api(p, 0.065, ApiDistribution::Uniform, rng));
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    CHECK(lo > 0.8);
    CHECK(hi < 1.1);
}

TEST_CASE("estimator gram matrix is close to a scaled identity for small errors") {
    const SystemParams p = default_params();
    for (double delta : {0.065, 0.15}) {
        for (int t = 0; t < 1000; ++t) {
            Philox rng(20, t, kRngApi);
            const ApiModel api = draw_api(p, delta, ApiDistribution::Uniform, rng);
            const Eigen::MatrixXcd f = analog_estimator_matrix(api);
            const double s2 = sigma2_fa(api);
            const Eigen::MatrixXcd gram = f.conjugate() * f.transpose();
            const double dev =
                (gram - s2 * Eigen::MatrixXcd::Identity(p.n_antennas, p.n_antennas))
                    .cwiseAbs()
                    .maxCoeff();
            CHECK(dev / s2 < 0.25);
        }
    }
}

TEST_SUITE_END();
