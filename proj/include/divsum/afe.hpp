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

#ifndef DIVSUM_AFE_HPP
#define DIVSUM_AFE_HPP

// The approximate functional equation: for alpha = h/k + eta,
//   D(M1, M2; alpha) = (k|eta|)^{-1} D(k^2 eta^2 M1, k^2 eta^2 M2; beta) + err,
//   beta = -hbar/k - 1/(k^2 eta),
// with err = O(sqrt(M) log M) classically, and O(sqrt(M) F^{-a}) under the
// Farey-ladder conditions, F = k^2 eta^2 M. This header computes both sides,
// the normalized errors, and the sweep/fit utilities.
//
// Endpoint convention: D sums over the closed interval. A dual endpoint
// k^2 eta^2 M_i within 8 ulp of an integer is treated as that integer and
// included, so exact-real configurations (e.g. eta = 1/M with M square) are
// honored even though the stored double eta is rounded.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "divsum/arithmetic.hpp"
#include "divsum/expsum.hpp"
#include "divsum/farey.hpp"

namespace divsum {

struct AFEReport {
    cplx lhs{0.0, 0.0};
    cplx rhs{0.0, 0.0};
    double err = 0.0;
    double norm_classic = 0.0;                // err / (sqrt(M) log M)
    std::vector<double> norm_improved;        // err / (sqrt(M) F^{-a}), per candidate a
    ConditionReport conditions;
    double f_value = 0.0;                     // k^2 eta^2 M (M = M1)
    double m_scale = 0.0;                     // M1
    bool hyp_k_ok = true;                     // k <= sqrt(M)
    bool hyp_eta_ok = true;                   // 0 < |eta| <= k^{-2}
    bool rhs_empty = false;
    long long m1 = 0, m2 = 0, h = 0, k = 1;
    double eta = 0.0;
};

struct AfeInterval {
    long long n_lo = 0;
    long long n_hi = -1;

    long long count() const { return n_hi >= n_lo ? n_hi - n_lo + 1 : 0; }
};

namespace afe_detail {

inline long long ceil_slack(DD v) {
    double r = std::round(v.hi);
    double slack = 8.0 * 2.220446049250313e-16 * std::abs(v.hi);
    if (std::abs(dd_sub(v, DD(r)).to_double()) <= slack) return (long long)r;
    double c = std::ceil(v.hi);
    if (c == v.hi && v.lo > 0.0) c += 1.0;
    return (long long)c;
}

inline long long floor_slack(DD v) {
    double r = std::round(v.hi);
    double slack = 8.0 * 2.220446049250313e-16 * std::abs(v.hi);
    if (std::abs(dd_sub(v, DD(r)).to_double()) <= slack) return (long long)r;
    double f = std::floor(v.hi);
    if (f == v.hi && v.lo < 0.0) f -= 1.0;
    return (long long)f;
}

}  // namespace afe_detail

// Integer range of the dual sum, [k^2 eta^2 M1, k^2 eta^2 M2] cap Z.
inline AfeInterval afe_interval(long long m1, long long m2, const AlphaSplit& split) {
    double k2 = double(split.frac.k) * double(split.frac.k);
    DD eta2 = dd_prod(split.eta, split.eta);
    DD lo = dd_mul(dd_mul(eta2, k2), double(m1));
    DD hi = dd_mul(dd_mul(eta2, k2), double(m2));
    AfeInterval iv;
    iv.n_lo = std::max<long long>(1, afe_detail::ceil_slack(lo));
    iv.n_hi = afe_detail::floor_slack(hi);
    return iv;
}

struct AfeRhsResult {
    cplx value{0.0, 0.0};
    bool empty = false;
    AfeInterval interval;
};

// (k|eta|)^{-1} sum_{n in dual interval} d(n) e(beta n), beta carried in
// double-double through the mod-1 reduction and each phase.
inline AfeRhsResult afe_rhs(long long m1, long long m2, const AlphaSplit& split) {
    if (split.eta == 0.0) throw std::invalid_argument("afe_rhs: eta must be nonzero");
    AfeRhsResult out;
    out.interval = afe_interval(m1, m2, split);
    if (out.interval.count() == 0) {
        out.empty = true;
        return out;
    }
    DD beta = beta_of(split);
    DivisorTable table = divisor_sieve(out.interval.n_lo, out.interval.n_hi);
    expsum_detail::Accum acc;
    for (long long n = out.interval.n_lo; n <= out.interval.n_hi; ++n) {
        cplx ph = term_phase_dd(n, beta);
        double d = double(table.at(n));
        acc.add(d * ph.real(), d * ph.imag());
    }
    double scale = 1.0 / (double(split.frac.k) * std::abs(split.eta));
    out.value = acc.total() * scale;
    return out;
}

// Full report: both sides, raw and normalized errors, condition ladder.
// The scale M is taken to be M1 (theorem convention M <= M1 < M2 <= 2M).
inline AFEReport afe_check(long long m1, long long m2, long long h, long long k,
                           double eta, const AFEParams& params,
                           const DivisorTable* table = nullptr, int threads = 1) {
    if (eta == 0.0) throw std::invalid_argument("afe_check: eta = 0 leaves the dual sum undefined");
    if (m1 >= m2) throw std::invalid_argument("afe_check: need M1 < M2");
    AFEReport rep;
    rep.m1 = m1;
    rep.m2 = m2;
    rep.h = h;
    rep.k = k;
    rep.eta = eta;
    rep.m_scale = double(m1);
    AlphaSplit split = make_alpha_split(h, k, eta);
    rep.hyp_k_ok = double(k) <= std::sqrt(double(m1));
    rep.hyp_eta_ok = std::abs(eta) <= 1.0 / (double(k) * double(k));
    rep.f_value = double(k) * double(k) * eta * eta * double(m1);

    SumSpec spec;
    spec.m1 = m1;
    spec.m2 = m2;
    spec.split = split;
    rep.lhs = raw_sum(spec, table, threads);
    AfeRhsResult rhs = afe_rhs(m1, m2, split);
    rep.rhs = rhs.value;
    rep.rhs_empty = rhs.empty;
    rep.err = std::abs(rep.lhs - rep.rhs);
    double sqrt_m = std::sqrt(rep.m_scale);
    rep.norm_classic = rep.err / (sqrt_m * std::log(rep.m_scale));
    for (double a : params.a_candidates)
        rep.norm_improved.push_back(rep.err * std::pow(rep.f_value, a) / sqrt_m);
    rep.conditions = beta_ladder(split, m1, params);
    return rep;
}

// Least-squares slope of log(err / sqrt(M)) against log F over the
// conditions-passed reports; returns the decay exponent estimate a
// (planted err = sqrt(M) F^{-a} comes back as a).
inline double fit_exponent(const std::vector<AFEReport>& reports) {
    std::vector<double> xs, ys;
    double f_min = 1e300, f_max = 0.0;
    for (const AFEReport& r : reports) {
        if (!r.conditions.passed || r.err <= 0.0 || r.f_value <= 0.0) continue;
        xs.push_back(std::log(r.f_value));
        ys.push_back(std::log(r.err / std::sqrt(r.m_scale)));
        f_min = std::min(f_min, r.f_value);
        f_max = std::max(f_max, r.f_value);
    }
    if (xs.size() < 10)
        throw std::invalid_argument("fit_exponent: need >= 10 conditions-passed reports");
    if (!(f_max / f_min >= 100.0))
        throw std::invalid_argument("fit_exponent: F values must span >= 2 decades");
    double n = double(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope;
}

// Unweighted short-sum bound probe: |D(x1, x; alpha)| / sqrt(M) together
// with the hypothesis indicators of the weight-removal theorem.
struct PainotonReport {
    double ratio = 0.0;        // |D| / sqrt(M), M = x1
    double f_value = 0.0;
    double indicator = 0.0;    // (M k^2 eta^2)^b
    bool hyp_k_ok = false;     // k <= M^{1/4}
    bool hyp_eta_ok = false;   // |eta| <= k^{-1} M^{-1/4}
    bool hyp_log_ok = false;   // (M k^2 eta^2)^b >= log M
    bool hyp_len_ok = false;   // x - x1 <= |eta|^{-1/2} M^{1/2+b}
    cplx value{0.0, 0.0};
};

inline PainotonReport painoton_check(double x1, double x, const AlphaSplit& split,
                                     double b, const DivisorTable* table = nullptr,
                                     int threads = 1) {
    if (!(x1 > 0.0) || !(x >= x1)) throw std::invalid_argument("painoton_check: need 0 < x1 <= x");
    PainotonReport rep;
    double m = x1;
    double k = double(split.frac.k);
    rep.f_value = k * k * split.eta * split.eta * m;
    rep.indicator = std::pow(rep.f_value, b);
    rep.hyp_k_ok = k <= std::pow(m, 0.25);
    rep.hyp_eta_ok = std::abs(split.eta) <= 1.0 / (k * std::pow(m, 0.25));
    rep.hyp_log_ok = rep.indicator >= std::log(m);
    rep.hyp_len_ok = (x - x1) <= std::pow(std::abs(split.eta), -0.5) * std::pow(m, 0.5 + b);
    SumSpec spec;
    spec.m1 = (long long)std::ceil(x1);
    spec.m2 = (long long)std::floor(x);
    spec.split = split;
    rep.value = spec.m1 <= spec.m2 ? raw_sum(spec, table, threads) : cplx{0.0, 0.0};
    rep.ratio = std::abs(rep.value) / std::sqrt(m);
    return rep;
}

}  // namespace divsum

#endif  // DIVSUM_AFE_HPP
