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

#include "ebfsim/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ebfsim {

namespace {

constexpr int kMaxIter = 131072;
constexpr int kMaxMixtureTerms = 262144;
// below this Poisson intensity the mixture is summed with direct incomplete
// gamma calls (full relative accuracy in deep tails); above it a single
// anchored call plus stable term recurrences keeps evaluations O(sqrt(lambda))
constexpr double kDirectMixtureLimit = 500.0;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Lower incomplete gamma by series, returns P(a,x). Valid for x < a+1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma by Lentz continued fraction, returns Q(a,x).
// Valid for x >= a+1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps)
            break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0)
        throw std::domain_error("gamma_p: require a > 0 and x >= 0");
    if (x == 0.0)
        return 0.0;
    if (x < a + 1.0)
        return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0)
        throw std::domain_error("gamma_q: require a > 0 and x >= 0");
    if (x == 0.0)
        return 1.0;
    if (x < a + 1.0)
        return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double bessel_i0_scaled(double x) {
    if (x < 0.0)
        x = -x;
    if (x <= 18.0) {
        const double q = 0.25 * x * x;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < kMaxIter; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < sum * kEps)
                break;
        }
        return std::exp(-x) * sum;
    }
    // Asymptotic expansion; truncated while terms still shrink.
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 14; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * k * x);
        sum += term;
        if (term < sum * kEps)
            break;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

double bessel_i0(double x) {
    const double ax = std::fabs(x);
    return bessel_i0_scaled(ax) * std::exp(ax);
}

double marcum_q1(double a, double b) {
    if (a < 0.0 || b < 0.0)
        throw std::domain_error("marcum_q1: require a, b >= 0");
    const NoncentralChiSquared d{2.0, a * a};
    return d.sf(b * b);
}

double NoncentralChiSquared::pdf(double x) const {
    if (dof <= 0.0 || lambda < 0.0)
        throw std::domain_error("NoncentralChiSquared: invalid parameters");
    if (x < 0.0)
        return 0.0;
    if (x == 0.0)
        return dof < 2.0 ? std::numeric_limits<double>::infinity()
                         : (dof == 2.0 ? 0.5 * std::exp(-0.5 * lambda) : 0.0);
    const double half = 0.5 * lambda;
    const double a = 0.5 * dof;
    if (half == 0.0)
        return std::exp((a - 1.0) * std::log(x) - 0.5 * x - a * M_LN2 - std::lgamma(a));
    // Poisson-weighted sum of central chi-square densities, expanded in both
    // directions from the modal Poisson index.
    const long j0 = static_cast<long>(half);
    const double log_base = -half + j0 * std::log(half) - std::lgamma(j0 + 1.0) +
                            (a + j0 - 1.0) * std::log(x) - 0.5 * x - (a + j0) * M_LN2 -
                            std::lgamma(a + j0);
    const double base = std::exp(log_base);
    if (base == 0.0 && log_base < -600.0)
        return 0.0; // all mixture terms below double range
    double sum = base;
    double t = base;
    for (long j = j0 + 1; j < j0 + kMaxMixtureTerms; ++j) {
        const double ratio = (half / j) * (0.5 * x / (a + j - 1.0));
        t *= ratio;
        sum += t;
        // once the term ratio is below one the tail is geometric
        if (ratio < 1.0 && t * ratio / (1.0 - ratio) < sum * kEps)
            break;
    }
    t = base;
    for (long j = j0 - 1; j >= 0; --j) {
        t *= ((j + 1.0) / half) * ((a + j) / (0.5 * x));
        sum += t;
        if (t < sum * kEps)
            break;
    }
    return sum;
}

namespace {

// Two-sided Poisson-mixture sum with a fresh incomplete-gamma evaluation per
// term. Keeps full relative accuracy (deep tails included); cost grows with
// the gamma argument, so it is reserved for small Poisson intensities.
double mixture_direct(double dof, double half, double x, bool upper) {
    const long j0 = static_cast<long>(half);
    const double pois0 = std::exp(-half + j0 * std::log(half) - std::lgamma(j0 + 1.0));
    double sum = 0.0;
    double pois = pois0;
    for (long j = j0; j < j0 + kMaxMixtureTerms; ++j) {
        if (j > j0)
            pois *= half / j;
        const double g = upper ? gamma_q(0.5 * dof + j, 0.5 * x) : gamma_p(0.5 * dof + j, 0.5 * x);
        sum += pois * g;
        // the upward remainder is bounded by the geometric Poisson tail times
        // the current gamma value (decreasing for P) or one (for Q)
        const double r = half / (j + 1.0);
        const double bound = upper ? 1.0 : g;
        if (r < 1.0 && pois * r / (1.0 - r) * bound < sum * kEps + 1e-300)
            break;
    }
    pois = pois0;
    for (long j = j0 - 1; j >= 0; --j) {
        pois *= (j + 1.0) / half;
        const double g = upper ? gamma_q(0.5 * dof + j, 0.5 * x) : gamma_p(0.5 * dof + j, 0.5 * x);
        sum += pois * g;
        if (pois < sum * kEps)
            break;
    }
    return std::min(sum, 1.0);
}

// Same sum with one anchored gamma evaluation and the stable recurrences
//   P(a+1,y) = P(a,y) - tau(a),  Q(a+1,y) = Q(a,y) + tau(a),
//   tau(a) = e^-y y^a / Gamma(a+1),
// giving O(1) work per term. Absolute accuracy ~1e-12; used for the bulk of
// sharply concentrated laws (large lambda).
double mixture_recurrent(double dof, double half, double x, bool upper) {
    const long j0 = static_cast<long>(half);
    const double y = 0.5 * x;
    const double a0 = 0.5 * dof + j0;
    const double pois0 = std::exp(-half + j0 * std::log(half) - std::lgamma(j0 + 1.0));
    const double g0 = upper ? gamma_q(a0, y) : gamma_p(a0, y);
    const double tau0 = std::exp(a0 * std::log(y) - y - std::lgamma(a0 + 1.0));

    double sum = pois0 * g0;
    double pois = pois0;
    double g = g0;
    double tau = tau0;
    for (long j = j0 + 1; j < j0 + kMaxMixtureTerms; ++j) {
        pois *= half / j;
        g = upper ? g + tau : g - tau;
        g = std::min(std::max(g, 0.0), 1.0);
        tau *= y / (0.5 * dof + j);
        sum += pois * g;
        const double r = half / (j + 1.0);
        if (r < 1.0 && pois * r / (1.0 - r) * (upper ? 1.0 : g) < sum * kEps + 1e-300)
            break;
    }
    pois = pois0;
    g = g0;
    tau = tau0;
    for (long j = j0 - 1; j >= 0; --j) {
        pois *= (j + 1.0) / half;
        tau *= (0.5 * dof + j + 1.0) / y;
        g = upper ? g - tau : g + tau;
        g = std::min(std::max(g, 0.0), 1.0);
        sum += pois * g;
        if (pois < sum * kEps)
            break;
    }
    return std::min(sum, 1.0);
}

double mixture_cdf_or_sf(double dof, double half, double x, bool upper) {
    if (half <= kDirectMixtureLimit)
        return mixture_direct(dof, half, x, upper);
    return mixture_recurrent(dof, half, x, upper);
}

} // namespace

double NoncentralChiSquared::cdf(double x) const {
    if (dof <= 0.0 || lambda < 0.0)
        throw std::domain_error("NoncentralChiSquared: invalid parameters");
    if (x <= 0.0)
        return 0.0;
    const double half = 0.5 * lambda;
    if (half == 0.0)
        return gamma_p(0.5 * dof, 0.5 * x);
    return mixture_cdf_or_sf(dof, half, x, false);
}

double NoncentralChiSquared::sf(double x) const {
    if (dof <= 0.0 || lambda < 0.0)
        throw std::domain_error("NoncentralChiSquared: invalid parameters");
    if (x <= 0.0)
        return 1.0;
    const double half = 0.5 * lambda;
    if (half == 0.0)
        return gamma_q(0.5 * dof, 0.5 * x);
    return mixture_cdf_or_sf(dof, half, x, true);
}

double NoncentralChiSquared::sample(Philox& rng) const {
    const int k = static_cast<int>(dof);
    if (k <= 0 || static_cast<double>(k) != dof)
        throw std::domain_error("NoncentralChiSquared::sample: integer dof required");
    const double mu = std::sqrt(lambda);
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
        const double z = rng.normal() + (i == 0 ? mu : 0.0);
        sum += z * z;
    }
    return sum;
}

namespace {

struct SimpsonPanel {
    double lo, hi, flo, fmid, fhi, estimate;
};

double simpson(double flo, double fmid, double fhi, double lo, double hi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
}

double adaptive_step(const std::function<double(double)>& f, const SimpsonPanel& p, double tol,
                     int depth) {
    const double mid = 0.5 * (p.lo + p.hi);
    const double lmid = 0.5 * (p.lo + mid);
    const double rmid = 0.5 * (mid + p.hi);
    const double flmid = f(lmid);
    const double frmid = f(rmid);
    const double left = simpson(p.flo, flmid, p.fmid, p.lo, mid);
    const double right = simpson(p.fmid, frmid, p.fhi, mid, p.hi);
    const double whole = left + right;
    // stop at the requested tolerance or once the refinement is below the
    // local rounding noise; recursing past that point cannot help
    const double accept = std::max(15.0 * tol, 1e-14 * std::fabs(whole) + 1e-300);
    if (depth <= 0 || std::fabs(whole - p.estimate) <= accept)
        return whole + (whole - p.estimate) / 15.0;
    return adaptive_step(f, {p.lo, mid, p.flo, flmid, p.fmid, left}, 0.5 * tol, depth - 1) +
           adaptive_step(f, {mid, p.hi, p.fmid, frmid, p.fhi, right}, 0.5 * tol, depth - 1);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double rel_tol, double abs_floor) {
    if (!(hi > lo))
        return 0.0;
    // First pass over a handful of panels to get a scale for the tolerance.
    const int n0 = 8;
    double rough = 0.0;
    const double step = (hi - lo) / n0;
    for (int i = 0; i < n0; ++i) {
        const double a = lo + i * step;
        const double b = a + step;
        rough += simpson(f(a), f(0.5 * (a + b)), f(b), a, b);
    }
    const double tol = std::max(std::fabs(rough) * rel_tol, abs_floor);
    double total = 0.0;
    for (int i = 0; i < n0; ++i) {
        const double a = lo + i * step;
        const double b = a + step;
        const double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
        const SimpsonPanel panel{a, b, fa, fm, fb, simpson(fa, fm, fb, a, b)};
        total += adaptive_step(f, panel, tol / n0, 28);
    }
    return total;
}

} // namespace ebfsim
