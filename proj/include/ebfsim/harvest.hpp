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

#ifndef EBFSIM_HARVEST_HPP
#define EBFSIM_HARVEST_HPP

#include <Eigen/Dense>
#include <string>

namespace ebfsim {

// Piecewise-linear rectifier curve in SI watts: zero below thresholds[0],
// slopes[i]*x + intercepts[i] on [thresholds[i], thresholds[i+1]], and the
// saturation constant above thresholds[L]. Boundary points resolve to the
// lower-indexed segment. The published per-segment fit is discontinuous at
// the knots; only strictly increasing thresholds are enforced here.
struct PwlaModel {
    Eigen::VectorXd thresholds; // length L+1
    Eigen::VectorXd slopes;     // length L
    Eigen::VectorXd intercepts; // length L, watts
    double saturation = 0.0;    // watts

    int segments() const { return static_cast<int>(slopes.size()); }
};

// Five-segment fit of a far-field rectifier: thresholds
// {6.31, 56.23, 158.49, 562.34, 1000, 1258.9} uW, slopes
// {0.193, 0.375, 0.13, 0.054, 0.028}, intercepts
// {-0.89, -11.767, 30.702, 72.372, 97.284} uW, saturation 0.25 mW.
PwlaModel default_pwla();

// Constant-efficiency baseline: L(x) = efficiency * x up to `span` watts.
PwlaModel linear_pwla(double efficiency, double span = 1.0);

// Loads a model from CSV: one "threshold,slope,intercept" line per segment
// (threshold is the segment's left edge), then a final
// "upper_threshold,saturation" line. All values in watts.
PwlaModel load_pwla_csv(const std::string& path);

void validate(const PwlaModel& m);

// Harvested DC power for received power p_r >= 0.
double harvest(const PwlaModel& m, double p_r);

// Index of the segment containing x: -1 below sensitivity, segments() above
// the top threshold, ties resolved to the lower index.
int pwla_segment_index(const PwlaModel& m, double x);

// Density and distribution of the received power under Rician beamforming
// with mean mu_pr and Rice factor K.
double received_power_pdf(double x, double k_factor, double mu_pr);
double received_power_cdf(double x, double k_factor, double mu_pr);

// E{L(p_r)} by adaptive quadrature over each linear piece plus the
// saturation tail through the distribution function.
double mean_harvested_power_exact(const PwlaModel& m, double k_factor, double mu_pr);

// L(mu_pr): the first-moment plug-in bound, with receptions above the fitted
// range clamped to the saturation constant.
double mean_harvested_power_approx(const PwlaModel& m, double mu_pr);

} // namespace ebfsim

#endif
