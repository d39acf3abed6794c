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

#include "ebfsim/harvest.hpp"

#include "ebfsim/specfun.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ebfsim {

PwlaModel default_pwla() {
    PwlaModel m;
    const double uw = 1e-6;
    m.thresholds.resize(6);
    m.thresholds << 6.31 * uw, 56.23 * uw, 158.49 * uw, 562.34 * uw, 1000.0 * uw, 1258.9 * uw;
    m.slopes.resize(5);
    m.slopes << 0.193, 0.375, 0.13, 0.054, 0.028;
    m.intercepts.resize(5);
    m.intercepts << -0.89 * uw, -11.767 * uw, 30.702 * uw, 72.372 * uw, 97.284 * uw;
    m.saturation = 0.25e-3;
    return m;
}

PwlaModel linear_pwla(double efficiency, double span) {
    if (!(efficiency > 0.0) || !(span > 0.0))
        throw std::invalid_argument("linear_pwla: efficiency and span must be > 0");
    PwlaModel m;
    m.thresholds.resize(2);
    m.thresholds << 0.0, span;
    m.slopes.resize(1);
    m.slopes << efficiency;
    m.intercepts = Eigen::VectorXd::Zero(1);
    m.saturation = efficiency * span;
    return m;
}

PwlaModel load_pwla_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_pwla_csv: cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<double> fields;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            fields.push_back(std::stod(cell));
        if (fields.size() != 2 && fields.size() != 3)
            throw std::runtime_error("load_pwla_csv: expected 2 or 3 fields per line");
        rows.push_back(fields);
    }
    if (rows.size() < 2 || rows.back().size() != 2)
        throw std::runtime_error(
            "load_pwla_csv: need segment rows plus a final upper-threshold,saturation row");
    const int segments = static_cast<int>(rows.size()) - 1;
    PwlaModel m;
    m.thresholds.resize(segments + 1);
    m.slopes.resize(segments);
    m.intercepts.resize(segments);
    for (int i = 0; i < segments; ++i) {
        if (rows[i].size() != 3)
            throw std::runtime_error("load_pwla_csv: segment rows need threshold,slope,intercept");
        m.thresholds[i] = rows[i][0];
        m.slopes[i] = rows[i][1];
        m.intercepts[i] = rows[i][2];
    }
    m.thresholds[segments] = rows.back()[0];
    m.saturation = rows.back()[1];
    validate(m);
    return m;
}

void validate(const PwlaModel& m) {
    const int l = m.segments();
    if (l < 1)
        throw std::invalid_argument("PwlaModel: need at least one segment");
    if (m.thresholds.size() != static_cast<Eigen::Index>(l) + 1 ||
        m.intercepts.size() != static_cast<Eigen::Index>(l))
        throw std::invalid_argument("PwlaModel: inconsistent array lengths");
    if (m.thresholds[0] < 0.0)
        throw std::invalid_argument("PwlaModel: thresholds must be >= 0");
    for (int i = 0; i < l; ++i)
        if (!(m.thresholds[i + 1] > m.thresholds[i]))
            throw std::invalid_argument("PwlaModel: thresholds must be strictly increasing");
    if (m.saturation < 0.0)
        throw std::invalid_argument("PwlaModel: saturation must be >= 0");
}

int pwla_segment_index(const PwlaModel& m, double x) {
    const int l = m.segments();
    if (x < m.thresholds[0])
        return -1;
    if (x > m.thresholds[l])
        return l;
    // ties go to the lower-indexed segment
    for (int i = 0; i < l; ++i)
        if (x <= m.thresholds[i + 1])
            return i;
    return l - 1;
}

double harvest(const PwlaModel& m, double p_r) {
    if (p_r < 0.0)
        throw std::domain_error("harvest: received power must be >= 0");
    const int idx = pwla_segment_index(m, p_r);
    if (idx < 0)
        return 0.0;
    if (idx >= m.segments())
        return m.saturation;
    return m.slopes[idx] * p_r + m.intercepts[idx];
}

double received_power_pdf(double x, double k_factor, double mu_pr) {
    if (!(mu_pr > 0.0))
        throw std::invalid_argument("received_power_pdf: mu_pr must be > 0");
    if (k_factor < 0.0)
        throw std::invalid_argument("received_power_pdf: K must be >= 0");
    if (x < 0.0)
        return 0.0;
    const double k1 = k_factor + 1.0;
    const double bessel_arg = 2.0 * std::sqrt(k_factor * k1 * x / mu_pr);
    // exp(-(K+1)x/mu - K) * I0(z) evaluated with the scaled Bessel function so
    // large arguments cannot overflow before the exponentials cancel.
    const double log_expo = -k1 * x / mu_pr - k_factor + bessel_arg;
    return (k1 / mu_pr) * std::exp(log_expo) * bessel_i0_scaled(bessel_arg);
}

double received_power_cdf(double x, double k_factor, double mu_pr) {
    if (!(mu_pr > 0.0))
        throw std::invalid_argument("received_power_cdf: mu_pr must be > 0");
    if (k_factor < 0.0)
        throw std::invalid_argument("received_power_cdf: K must be >= 0");
    if (x <= 0.0)
        return 0.0;
    return 1.0 - marcum_q1(std::sqrt(2.0 * k_factor), std::sqrt(2.0 * (k_factor + 1.0) * x / mu_pr));
}

namespace {

double received_power_sf(double x, double k_factor, double mu_pr) {
    if (x <= 0.0)
        return 1.0;
    return marcum_q1(std::sqrt(2.0 * k_factor), std::sqrt(2.0 * (k_factor + 1.0) * x / mu_pr));
}

} // namespace

double mean_harvested_power_exact(const PwlaModel& m, double k_factor, double mu_pr) {
    if (!(mu_pr > 0.0))
        throw std::invalid_argument("mean_harvested_power_exact: mu_pr must be > 0");
    const int l = m.segments();
    // Beyond this point the density has fallen below double precision of the
    // bulk contribution; solving (K+1)x/mu - 2*sqrt(K(K+1)x/mu) = 800 for x.
    const double t = std::sqrt(k_factor) + std::sqrt(k_factor + 800.0);
    const double cutoff = mu_pr * t * t / (k_factor + 1.0) * 1.5;
    const auto pdf = [&](double x) { return received_power_pdf(x, k_factor, mu_pr); };
    double total = 0.0;
    for (int i = 0; i < l; ++i) {
        const double lo = m.thresholds[i];
        const double hi = std::min(m.thresholds[i + 1], cutoff);
        if (hi <= lo)
            continue;
        const double a = m.slopes[i];
        const double b = m.intercepts[i];
        total += integrate_adaptive([&](double x) { return (a * x + b) * pdf(x); }, lo, hi, 1e-9);
    }
    total += m.saturation * received_power_sf(m.thresholds[l], k_factor, mu_pr);
    return total;
}

double mean_harvested_power_approx(const PwlaModel& m, double mu_pr) {
    if (mu_pr < 0.0)
        throw std::invalid_argument("mean_harvested_power_approx: mu_pr must be >= 0");
    const int idx = pwla_segment_index(m, mu_pr);
    if (idx < 0)
        return 0.0;
    if (idx >= m.segments())
        return m.saturation;
    return m.slopes[idx] * mu_pr + m.intercepts[idx];
}

} // namespace ebfsim
