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

#ifndef EBFSIM_SPECFUN_HPP
#define EBFSIM_SPECFUN_HPP

#include "ebfsim/rng.hpp"

#include <functional>

namespace ebfsim {

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
// Series expansion for x < a+1, continued fraction otherwise, so the small
// member of the pair is always the one computed directly.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Exponentially scaled modified Bessel function of the first kind,
// exp(-x) * I0(x), for x >= 0. Power series below x = 18, asymptotic
// expansion above; relative accuracy ~1e-13.
double bessel_i0_scaled(double x);

// Unscaled I0; overflows to +inf for x beyond ~709 as exp does.
double bessel_i0(double x);

// First-order Marcum Q function Q1(a, b), evaluated through the
// noncentral chi-square survival function so deep tails stay accurate.
double marcum_q1(double a, double b);

// Noncentral chi-square distribution with `dof` degrees of freedom and
// noncentrality `lambda`, evaluated as a Poisson mixture of gamma laws.
struct NoncentralChiSquared {
    double dof = 2.0;
    double lambda = 0.0;

    double pdf(double x) const;
    double cdf(double x) const;
    double sf(double x) const; // survival function, 1 - cdf with full tail accuracy
    double mean() const { return dof + lambda; }

    // Draws sum_{i<dof} N(mu_i,1)^2 with the noncentrality on the first
    // coordinate; requires integer dof.
    double sample(Philox& rng) const;
};

// Adaptive Simpson quadrature with Richardson correction. `rel_tol` bounds
// the relative error against the accumulated integral estimate.
double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double rel_tol, double abs_floor = 1e-300);

} // namespace ebfsim

#endif
