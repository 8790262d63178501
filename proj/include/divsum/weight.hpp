// Copyright 2026 The divsum Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIVSUM_WEIGHT_HPP
#define DIVSUM_WEIGHT_HPP

// Smoothing weights.
//
// The J-fold box average of an interval indicator is evaluated in closed
// form: averaging over u = u_1 + ... + u_J with u_i ~ U[0,V] turns the
// indicator of [a + u, b - u] into F(min(x-a, b-x)) where F is the
// Irwin-Hall CDF of u. That is an exact piecewise polynomial of degree J,
// (J-1)-times continuously differentiable, equal to 1 once min(...) >= J*V.
// Derivatives of the ramp are bounded by C_j * V^{-j}.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace divsum {

namespace weight_detail {

// CDF of the sum of J independent U[0,1] variables, evaluated at s in [0,J].
inline double irwin_hall_cdf(double s, int j_order) {
    if (s <= 0.0) return 0.0;
    if (s >= double(j_order)) return 1.0;
    double inv_fact = 1.0;
    for (int i = 2; i <= j_order; ++i) inv_fact /= double(i);
    double sum = 0.0;
    double binom = 1.0;  // C(J, k)
    double sign = 1.0;
    for (int k = 0; k <= int(s); ++k) {
        double base = s - double(k);
        double p = 1.0;
        for (int i = 0; i < j_order; ++i) p *= base;
        sum += sign * binom * p;
        sign = -sign;
        binom = binom * double(j_order - k) / double(k + 1);
    }
    double v = sum * inv_fact;
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

}  // namespace weight_detail

enum class WeightKind { indicator, eta_j, bump };

// Compactly supported weight, 1 on the plateau, polynomial ramps of
// smoothness order-1 in between.
struct WeightFunction {
    WeightKind kind = WeightKind::indicator;
    double lo = 0.0, hi = 0.0;                  // support
    double plateau_lo = 0.0, plateau_hi = 0.0;  // w == 1 here
    int order = 0;                              // J
    double scale = 0.0;                         // U (eta_j) or Delta_ell (bump)

    double operator()(double x) const {
        if (x <= lo || x >= hi) return x == lo || x == hi ? eval_ramp(x) : 0.0;
        if (x >= plateau_lo && x <= plateau_hi) return 1.0;
        return eval_ramp(x);
    }

    double ramp_lo_width() const { return plateau_lo - lo; }
    double ramp_hi_width() const { return hi - plateau_hi; }

  private:
    double eval_ramp(double x) const {
        if (kind == WeightKind::indicator) return (x >= lo && x <= hi) ? 1.0 : 0.0;
        if (x < lo || x > hi) return 0.0;
        double t;
        if (x < plateau_lo) {
            double w = ramp_lo_width();
            t = w > 0.0 ? (x - lo) / w : 1.0;
        } else {
            double w = ramp_hi_width();
            t = w > 0.0 ? (hi - x) / w : 1.0;
        }
        return weight_detail::irwin_hall_cdf(double(order) * t, order);
    }
};

// J-fold box average (averaging length U per fold) of the indicator of
// [M, M+Delta]. Support [M - J*U, M + Delta + J*U], plateau [M, M + Delta].
// J = 0 gives the plain indicator.
inline WeightFunction build_eta_J(double m, double delta, double u, int j_order) {
    if (delta <= 0.0) throw std::invalid_argument("build_eta_J: Delta must be positive");
    if (j_order < 0) throw std::invalid_argument("build_eta_J: J must be >= 0");
    WeightFunction w;
    w.lo = m - double(j_order) * u;
    w.hi = m + delta + double(j_order) * u;
    if (j_order == 0) {
        w.kind = WeightKind::indicator;
        w.plateau_lo = w.lo;
        w.plateau_hi = w.hi;
        return w;
    }
    if (!(u > 0.0)) throw std::invalid_argument("build_eta_J: U must be positive");
    if (u >= (w.hi - w.lo) / (2.0 * double(j_order)))
        throw std::invalid_argument("build_eta_J: averaging window too wide");
    w.kind = WeightKind::eta_j;
    w.order = j_order;
    w.scale = u;
    w.plateau_lo = m;
    w.plateau_hi = m + delta;
    return w;
}

// Partition-of-unity bumps covering [M, M+Delta] up to tails of length
// ~Delta_L at both ends. Index ell = 0 is the central bump, ell = 1..L march
// right with widths Delta_0 = 2*Delta/5, Delta_1 = Delta/4, then halving;
// negative indices mirror about M + Delta/2. Adjacent ramps are exact
// complements, so the sum is exactly 1 on the covered middle region.
struct PartitionWeights {
    std::vector<WeightFunction> weights;  // index order: -L..L
    int levels = 0;                       // L
    double covered_lo = 0.0, covered_hi = 0.0;

    const WeightFunction& at(int ell) const { return weights[std::size_t(ell + levels)]; }
};

inline PartitionWeights build_partition(double m, double delta, int levels,
                                        int ramp_order = 4, double eps = 0.05) {
    if (delta <= 0.0) throw std::invalid_argument("build_partition: Delta must be positive");
    if (levels < 1) throw std::invalid_argument("build_partition: L must be >= 1");
    if (delta > std::pow(m, 0.625) * (1.0 + 1e-12))
        throw std::invalid_argument("build_partition: requires Delta <= M^(5/8)");

    double delta0 = 0.4 * delta;
    double delta1 = 0.25 * delta;
    double delta_L = delta1 * std::pow(0.5, levels - 1);
    double target = std::pow(m, 0.4 + eps);
    if (delta_L > target) {
        int need = levels;
        double d = delta_L;
        while (d > target) {
            d *= 0.5;
            ++need;
        }
        throw std::invalid_argument("build_partition: L too small; need L >= " +
                                    std::to_string(need) + " to reach Delta_L <= M^(2/5+eps)");
    }

    double center = m + 0.5 * delta;
    double m0 = m + 0.3 * delta;

    // M_ell and Delta_ell for ell = 1..L.
    std::vector<double> mpos(std::size_t(levels) + 2), dl(std::size_t(levels) + 2);
    dl[0] = delta0;
    dl[1] = delta1;
    for (int l = 2; l <= levels + 1; ++l) dl[std::size_t(l)] = 0.5 * dl[std::size_t(l - 1)];
    mpos[1] = m0 + 0.75 * delta0;
    for (int l = 2; l <= levels + 1; ++l)
        mpos[std::size_t(l)] = mpos[std::size_t(l - 1)] + 0.8 * dl[std::size_t(l - 1)];

    auto bump = [&](double lo, double p_lo, double p_hi, double hi, double sc) {
        WeightFunction w;
        w.kind = WeightKind::bump;
        w.lo = lo;
        w.hi = hi;
        w.plateau_lo = p_lo;
        w.plateau_hi = p_hi;
        w.order = ramp_order;
        w.scale = sc;
        return w;
    };

    PartitionWeights part;
    part.levels = levels;
    part.weights.resize(std::size_t(2 * levels) + 1);
    part.weights[std::size_t(levels)] =
        bump(m0, m0 + 0.25 * delta0, m0 + 0.75 * delta0, m0 + delta0, delta0);
    for (int l = 1; l <= levels; ++l) {
        double lo = mpos[std::size_t(l)];
        double hi = mpos[std::size_t(l)] + dl[std::size_t(l)];
        double p_lo = l == 1 ? m0 + delta0 : mpos[std::size_t(l - 1)] + dl[std::size_t(l - 1)];
        double p_hi = mpos[std::size_t(l + 1)];
        part.weights[std::size_t(levels + l)] = bump(lo, p_lo, p_hi, hi, dl[std::size_t(l)]);
        // mirror image about the center
        WeightFunction wm = bump(2.0 * center - hi, 2.0 * center - p_hi,
                                 2.0 * center - p_lo, 2.0 * center - lo, dl[std::size_t(l)]);
        part.weights[std::size_t(levels - l)] = wm;
    }
    part.covered_hi = mpos[std::size_t(levels + 1)];
    part.covered_lo = 2.0 * center - part.covered_hi;
    return part;
}

// Sum of all partition weights at x (1 on the covered region).
inline double partition_sum(const PartitionWeights& part, double x) {
    double s = 0.0;
    for (const auto& w : part.weights) s += w(x);
    return s;
}

}  // namespace divsum

#endif  // DIVSUM_WEIGHT_HPP
